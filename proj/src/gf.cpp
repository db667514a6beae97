#include "dropout/gf.hpp"

#include <algorithm>

namespace dropout::gf {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Polynomials over GF(p) as coefficient vectors, low-to-high, no trailing zeros.
using Poly = std::vector<int>;

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
    trim(a);
    while (a.size() >= m.size()) {
        int lead = a.back();
        // m is monic
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            a[i + shift] = ((a[i + shift] - lead * m[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

// Exhaustive check: no monic factor of degree 1..deg/2 divides m.
bool poly_irreducible(const Poly& m, int p) {
    int deg = int(m.size()) - 1;
    for (int fd = 1; fd * 2 <= deg; ++fd) {
        // enumerate monic polynomials of degree fd
        std::vector<int> c(fd, 0);
        while (true) {
            Poly f(c.begin(), c.end());
            f.push_back(1);
            if (poly_mod(m, f, p).empty()) return false;
            int i = 0;
            for (; i < fd; ++i) {
                if (++c[i] < p) break;
                c[i] = 0;
            }
            if (i == fd) break;
        }
    }
    return true;
}

}  // namespace

Field::Field(int q) : q_(q) {
    if (q < 2) fail("NotPrimePower", "order must be at least 2");
    if (q > 64) fail("UnsupportedOrder", "order capped at 64");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (p > q) fail("NotPrimePower", "no prime divisor found");
    }
    int e = 0, m = q;
    while (m % p == 0) {
        m /= p;
        ++e;
    }
    if (m != 1) fail("NotPrimePower", std::to_string(q) + " is not a prime power");
    p_ = p;
    e_ = e;

    if (e_ == 1) {
        modulus_ = {0, 1};
    } else {
        // smallest monic irreducible of degree e, low-to-high lexicographic
        std::vector<int> c(e_, 0);
        bool found = false;
        while (!found) {
            Poly cand(c.begin(), c.end());
            cand.push_back(1);
            if (poly_irreducible(cand, p_)) {
                modulus_ = cand;
                found = true;
                break;
            }
            int i = e_ - 1;
            while (i >= 0 && ++c[i] == p_) c[i--] = 0;
            if (i < 0) break;
        }
        if (!found) fail("UnsupportedOrder", "no irreducible modulus found");
    }

    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    for (Elem a = 0; a < q_; ++a) {
        auto ca_raw = coeffs(a);
        auto ca = ca_raw;
        for (int i = 0; i < e_; ++i) ca[i] = (p_ - ca[i]) % p_;
        neg_[a] = from_coeffs(ca);
        for (Elem b = 0; b < q_; ++b) {
            auto cb = coeffs(b);
            auto s = coeffs(a);
            for (int i = 0; i < e_; ++i) s[i] = (s[i] + cb[i]) % p_;
            add_[a * q_ + b] = from_coeffs(s);

            Poly prod = poly_mul(Poly(ca_raw.begin(), ca_raw.end()),
                                 Poly(cb.begin(), cb.end()), p_);
            Poly red = poly_mod(prod, modulus_, p_);
            red.resize(e_, 0);
            mul_[a * q_ + b] = from_coeffs(std::vector<int>(red.begin(), red.end()));
        }
    }
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a == 0) fail("DivisionByZero", "inverse of zero");
    for (Elem b = 1; b < q_; ++b)
        if (mul(a, b) == 1) return b;
    fail("InternalError", "no inverse found");
}

Elem Field::pow(Elem a, long long n) const {
    check(a);
    if (n < 0) return pow(inv(a), -n);
    Elem r = 1, base = a;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        base = mul(base, base);
        n >>= 1;
    }
    return r;
}

std::vector<int> Field::coeffs(Elem a) const {
    check(a);
    std::vector<int> c(e_);
    for (int i = 0; i < e_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Elem Field::from_coeffs(const std::vector<int>& c) const {
    Elem a = 0;
    for (int i = int(c.size()) - 1; i >= 0; --i) {
        if (c[i] < 0 || c[i] >= p_) fail("InvalidElement", "coefficient out of range");
        a = a * p_ + c[i];
    }
    return a;
}

int row_reduce(const Field& F, Matrix& M) {
    if (M.empty()) return 0;
    size_t cols = M[0].size();
    for (const auto& row : M)
        if (row.size() != cols) fail("DimensionMismatch", "ragged matrix");
    int r = 0;
    for (size_t c = 0; c < cols && r < int(M.size()); ++c) {
        int pivot = -1;
        for (size_t i = r; i < M.size(); ++i)
            if (M[i][c] != 0) {
                pivot = int(i);
                break;
            }
        if (pivot < 0) continue;
        std::swap(M[r], M[pivot]);
        Elem s = F.inv(M[r][c]);
        for (size_t j = 0; j < cols; ++j) M[r][j] = F.mul(M[r][j], s);
        for (size_t i = 0; i < M.size(); ++i) {
            if (int(i) == r || M[i][c] == 0) continue;
            Elem f = M[i][c];
            for (size_t j = 0; j < cols; ++j)
                M[i][j] = F.sub(M[i][j], F.mul(f, M[r][j]));
        }
        ++r;
    }
    return r;
}

int rank(const Field& F, Matrix M) { return row_reduce(F, M); }

Matrix kernel_basis(const Field& F, const Matrix& M) {
    if (M.empty()) return {};
    size_t cols = M[0].size();
    Matrix R = M;
    int r = row_reduce(F, R);
    // locate pivot columns
    std::vector<int> pivot_of_col(cols, -1);
    for (int i = 0; i < r; ++i) {
        for (size_t c = 0; c < cols; ++c)
            if (R[i][c] != 0) {
                pivot_of_col[c] = i;
                break;
            }
    }
    Matrix basis;
    for (size_t free = 0; free < cols; ++free) {
        if (pivot_of_col[free] >= 0) continue;
        std::vector<Elem> v(cols, 0);
        v[free] = 1;
        for (size_t c = 0; c < cols; ++c) {
            int pi = pivot_of_col[c];
            if (pi >= 0) v[c] = F.neg(R[pi][free]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool columns_independent(const Field& F, const Matrix& M, const std::vector<int>& cols) {
    Matrix sub(M.size(), std::vector<Elem>(cols.size()));
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j) {
            if (cols[j] < 0 || cols[j] >= int(M[i].size()))
                fail("DimensionMismatch", "column index out of range");
            sub[i][j] = M[i][cols[j]];
        }
    return rank(F, sub) == int(cols.size());
}

std::vector<Elem> row_times_matrix(const Field& F, const std::vector<Elem>& x, const Matrix& M) {
    if (M.size() != x.size()) fail("DimensionMismatch", "vector/matrix size mismatch");
    if (M.empty()) return {};
    std::vector<Elem> y(M[0].size(), 0);
    for (size_t i = 0; i < x.size(); ++i) {
        if (M[i].size() != y.size()) fail("DimensionMismatch", "ragged matrix");
        for (size_t j = 0; j < y.size(); ++j)
            y[j] = F.add(y[j], F.mul(x[i], M[i][j]));
    }
    return y;
}

}  // namespace dropout::gf

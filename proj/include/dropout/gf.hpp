#pragma once

#include <cstdint>
#include <vector>

#include "dropout/error.hpp"

namespace dropout::gf {

// Elements are integer labels in [0, q): the base-p encoding of the
// coefficient vector of the canonical residue polynomial (low-to-high).
using Elem = int;

using Matrix = std::vector<std::vector<Elem>>;

// GF(p^e) with precomputed operation tables. q is capped at 64, so the
// tables stay tiny and every operation is a lookup.
class Field {
public:
    // q must be a prime power <= 64. Throws NotPrimePower / UnsupportedOrder.
    explicit Field(int q);

    int q() const noexcept { return q_; }
    int p() const noexcept { return p_; }
    int e() const noexcept { return e_; }

    // Modulus coefficients low-to-high, degree e, monic, irreducible over GF(p).
    // For e == 1 this is x, i.e. {0, 1}.
    const std::vector<int>& modulus() const noexcept { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[idx(a, b)]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const { return mul_[idx(a, b)]; }
    Elem neg(Elem a) const { return neg_[check(a)]; }
    Elem inv(Elem a) const;
    Elem pow(Elem a, long long n) const;

    // Coefficient vector of the element, length e, entries in [0, p).
    std::vector<int> coeffs(Elem a) const;
    Elem from_coeffs(const std::vector<int>& c) const;

private:
    int q_, p_, e_;
    std::vector<int> modulus_;
    std::vector<Elem> add_, mul_, neg_;

    int idx(Elem a, Elem b) const { return check(a) * q_ + check(b); }
    Elem check(Elem a) const {
        if (a < 0 || a >= q_) fail("InvalidElement", "element out of range");
        return a;
    }
};

// ---- linear algebra over GF(q) ----

// Row-reduced echelon form; returns the rank.
int row_reduce(const Field& F, Matrix& M);

int rank(const Field& F, Matrix M);

// Basis of the right kernel (as row vectors).
Matrix kernel_basis(const Field& F, const Matrix& M);

// True iff the selected columns of M are linearly independent.
bool columns_independent(const Field& F, const Matrix& M, const std::vector<int>& cols);

// y = x * M (row vector times matrix).
std::vector<Elem> row_times_matrix(const Field& F, const std::vector<Elem>& x, const Matrix& M);

}  // namespace dropout::gf

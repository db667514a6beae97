#include "dropout/geometry.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace dropout::geom {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// All vectors of GF(q)^len in lexicographic order (index 0 most significant).
std::vector<std::vector<gf::Elem>> all_vectors(int q, int len) {
    std::vector<std::vector<gf::Elem>> out;
    out.reserve(size_t(ipow(q, len)));
    std::vector<gf::Elem> v(len, 0);
    while (true) {
        out.push_back(v);
        int i = len - 1;
        while (i >= 0 && ++v[i] == q) v[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

std::vector<gf::Elem> normalize(const gf::Field& F, std::vector<gf::Elem> v) {
    for (auto c : v) {
        if (c != 0) {
            gf::Elem s = F.inv(c);
            for (auto& x : v) x = F.mul(s, x);
            break;
        }
    }
    return v;
}

// Enumerate all k-dim subspaces of GF(q)^n as RREF basis matrices,
// deterministic order: pivot columns lexicographic, then free entries.
void for_each_subspace(const gf::Field& F, int n, int k,
                       const std::function<void(const gf::Matrix&)>& fn);

void enumerate_rref(const gf::Field& F, int n, const std::vector<int>& pivots,
                    const std::function<void(const gf::Matrix&)>& fn) {
    int k = int(pivots.size());
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    // free positions: (row i, col j) with j > pivots[i], j not a pivot column
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < k; ++i)
        for (int j = pivots[i] + 1; j < n; ++j)
            if (!is_pivot[j]) free_pos.emplace_back(i, j);

    gf::Matrix M(k, std::vector<gf::Elem>(n, 0));
    for (int i = 0; i < k; ++i) M[i][pivots[i]] = 1;

    std::vector<gf::Elem> vals(free_pos.size(), 0);
    int q = F.q();
    while (true) {
        for (size_t s = 0; s < free_pos.size(); ++s)
            M[free_pos[s].first][free_pos[s].second] = vals[s];
        fn(M);
        int i = int(vals.size()) - 1;
        while (i >= 0 && ++vals[i] == q) vals[i--] = 0;
        if (i < 0) break;
    }
}

void for_each_subspace(const gf::Field& F, int n, int k,
                       const std::function<void(const gf::Matrix&)>& fn) {
    if (k == 0) {
        fn(gf::Matrix{});
        return;
    }
    std::vector<int> pivots(k);
    for (int i = 0; i < k; ++i) pivots[i] = i;
    while (true) {
        enumerate_rref(F, n, pivots, fn);
        // next combination
        int i = k - 1;
        while (i >= 0 && pivots[i] == n - k + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
    }
}

// All vectors in the row space of basis (including zero).
std::vector<std::vector<gf::Elem>> span_vectors(const gf::Field& F, const gf::Matrix& basis,
                                                int n) {
    std::vector<std::vector<gf::Elem>> out;
    int k = int(basis.size());
    std::vector<gf::Elem> x(k, 0);
    while (true) {
        out.push_back(basis.empty() ? std::vector<gf::Elem>(n, 0)
                                    : gf::row_times_matrix(F, x, basis));
        int i = k - 1;
        while (i >= 0 && ++x[i] == F.q()) x[i--] = 0;
        if (i < 0 || k == 0) break;
    }
    return out;
}

std::vector<int> projective_span_points(const gf::Field& F, const PointSet& pts,
                                        const gf::Matrix& basis) {
    std::set<int> labels;
    for (auto& v : span_vectors(F, basis, pts.d + 1)) {
        bool zero = std::all_of(v.begin(), v.end(), [](gf::Elem e) { return e == 0; });
        if (zero) continue;
        labels.insert(pts.label_of(normalize(F, v)));
    }
    return {labels.begin(), labels.end()};
}

}  // namespace

int PointSet::label_of(const std::vector<gf::Elem>& v) const {
    auto it = std::lower_bound(vectors.begin(), vectors.end(), v);
    if (it == vectors.end() || *it != v) fail("InvalidPoint", "vector is not an enumerated point");
    return int(it - vectors.begin());
}

long long gaussian_coefficient(int d, int t, int q) {
    if (q < 2) fail("InvalidParameter", "q must be at least 2");
    if (t < 0 || d < 0) return 0;
    if (t > d) return 0;
    if (t == 0) return 1;
    // Pascal-style recurrence keeps everything in integers.
    std::vector<long long> row(t + 1, 0);
    row[0] = 1;
    for (int dd = 1; dd <= d; ++dd) {
        for (int tt = std::min(t, dd); tt >= 1; --tt)
            row[tt] = (tt == dd ? 1 : row[tt] * ipow(q, tt) + row[tt - 1]);
    }
    return row[t];
}

PointSet enumerate_points(Kind kind, int d, const gf::Field& F) {
    if (d < 1) fail("InvalidParameter", "dimension must be at least 1");
    PointSet P;
    P.kind = kind;
    P.d = d;
    if (kind == Kind::Affine) {
        P.vectors = all_vectors(F.q(), d);
    } else {
        for (auto& v : all_vectors(F.q(), d + 1)) {
            bool zero = true;
            gf::Elem first = 0;
            for (auto c : v)
                if (c != 0) {
                    zero = false;
                    first = c;
                    break;
                }
            if (zero || first != 1) continue;
            P.vectors.push_back(v);
        }
    }
    return P;
}

std::vector<Flat> enumerate_flats(Kind kind, int d, const gf::Field& F, int t) {
    PointSet pts = enumerate_points(kind, d, F);
    std::vector<Flat> flats;
    if (kind == Kind::Projective) {
        if (t < 0 || t > d - 1) fail("InvalidParameter", "projective flat dimension out of range");
        for_each_subspace(F, d + 1, t + 1, [&](const gf::Matrix& basis) {
            Flat fl;
            fl.kind = kind;
            fl.t = t;
            fl.basis = basis;
            fl.points = projective_span_points(F, pts, basis);
            flats.push_back(std::move(fl));
        });
    } else {
        if (t < 0 || t > d) fail("InvalidParameter", "affine flat dimension out of range");
        for_each_subspace(F, d, t, [&](const gf::Matrix& basis) {
            // all cosets of this subspace, shifts in lexicographic label order
            auto sub = span_vectors(F, basis, d);
            std::vector<bool> covered(pts.size(), false);
            for (int lbl = 0; lbl < pts.size(); ++lbl) {
                if (covered[lbl]) continue;
                Flat fl;
                fl.kind = kind;
                fl.t = t;
                fl.basis = basis;
                fl.shift = pts.vectors[lbl];
                for (auto& u : sub) {
                    std::vector<gf::Elem> w(d);
                    for (int i = 0; i < d; ++i) w[i] = F.add(u[i], fl.shift[i]);
                    int l2 = pts.label_of(w);
                    covered[l2] = true;
                    fl.points.push_back(l2);
                }
                std::sort(fl.points.begin(), fl.points.end());
                flats.push_back(std::move(fl));
            }
        });
    }
    return flats;
}

std::vector<Flat> hyperplanes_through_flat(int d, const gf::Field& F, const Flat& T) {
    if (T.kind != Kind::Projective) fail("InvalidParameter", "expected a projective flat");
    std::vector<Flat> out;
    for (auto& H : enumerate_flats(Kind::Projective, d, F, d - 1)) {
        if (std::includes(H.points.begin(), H.points.end(), T.points.begin(), T.points.end()))
            out.push_back(H);
    }
    return out;
}

ParallelClass parallel_class_of(int d, const gf::Field& F, const Flat& T) {
    if (T.kind != Kind::Affine) fail("InvalidParameter", "expected an affine flat");
    PointSet pts = enumerate_points(Kind::Affine, d, F);
    auto sub = span_vectors(F, T.basis, d);
    ParallelClass pc;
    pc.t = T.t;
    std::vector<bool> covered(pts.size(), false);
    for (int lbl = 0; lbl < pts.size(); ++lbl) {
        if (covered[lbl]) continue;
        Flat fl;
        fl.kind = Kind::Affine;
        fl.t = T.t;
        fl.basis = T.basis;
        fl.shift = pts.vectors[lbl];
        for (auto& u : sub) {
            std::vector<gf::Elem> w(d);
            for (int i = 0; i < d; ++i) w[i] = F.add(u[i], fl.shift[i]);
            int l2 = pts.label_of(w);
            covered[l2] = true;
            fl.points.push_back(l2);
        }
        std::sort(fl.points.begin(), fl.points.end());
        pc.members.push_back(std::move(fl));
    }
    return pc;
}

namespace {

// Field-reduction spread for prime q: view GF(q)^{d+1} as E^m with
// E = GF(q^{t+1}); each projective point over E becomes a t-flat.
Spread spread_field_reduction(int d, const gf::Field& F, int t) {
    int q = F.q();
    int m = (d + 1) / (t + 1);
    gf::Field E(int(ipow(q, t + 1)));
    PointSet pts = enumerate_points(Kind::Projective, d, F);

    auto expand = [&](const std::vector<gf::Elem>& ev) {
        std::vector<gf::Elem> v;
        v.reserve(d + 1);
        for (auto e : ev) {
            auto c = E.coeffs(e);
            v.insert(v.end(), c.begin(), c.end());
        }
        return v;
    };

    Spread S;
    S.t = t;
    PointSet epts = enumerate_points(Kind::Projective, m - 1, E);
    for (auto& x : epts.vectors) {
        Flat fl;
        fl.kind = Kind::Projective;
        fl.t = t;
        std::set<int> labels;
        for (gf::Elem a = 1; a < E.q(); ++a) {
            std::vector<gf::Elem> ax(m);
            for (int i = 0; i < m; ++i) ax[i] = E.mul(a, x[i]);
            labels.insert(pts.label_of(normalize(F, expand(ax))));
        }
        fl.points.assign(labels.begin(), labels.end());
        // GF(q)-basis: x scaled by the monomial basis 1, y, .., y^t of E
        for (int j = 0; j <= t; ++j) {
            gf::Elem mono = gf::Elem(ipow(q, j));
            std::vector<gf::Elem> ax(m);
            for (int i = 0; i < m; ++i) ax[i] = E.mul(mono, x[i]);
            fl.basis.push_back(expand(ax));
        }
        S.members.push_back(std::move(fl));
    }
    return S;
}

// Backtracking partition search over all t-flats, for non-prime q.
Spread spread_search(int d, const gf::Field& F, int t) {
    auto flats = enumerate_flats(Kind::Projective, d, F, t);
    PointSet pts = enumerate_points(Kind::Projective, d, F);
    int np = pts.size();
    std::vector<std::vector<int>> through(np);
    for (int i = 0; i < int(flats.size()); ++i)
        for (int p : flats[i].points) through[p].push_back(i);

    std::vector<bool> covered(np, false);
    std::vector<int> chosen;
    long long nodes = 0;
    const long long budget = 5'000'000;

    std::function<bool()> dfs = [&]() -> bool {
        if (++nodes > budget) fail("SearchFailed", "spread search budget exceeded");
        int p = 0;
        while (p < np && covered[p]) ++p;
        if (p == np) return true;
        for (int fi : through[p]) {
            auto& fp = flats[fi].points;
            if (std::any_of(fp.begin(), fp.end(), [&](int x) { return covered[x]; })) continue;
            for (int x : fp) covered[x] = true;
            chosen.push_back(fi);
            if (dfs()) return true;
            chosen.pop_back();
            for (int x : fp) covered[x] = false;
        }
        return false;
    };
    if (!dfs()) fail("SearchFailed", "no spread found within budget");
    Spread S;
    S.t = t;
    for (int fi : chosen) S.members.push_back(flats[fi]);
    return S;
}

}  // namespace

Spread find_spread(int d, const gf::Field& F, int t) {
    if ((d + 1) % (t + 1) != 0)
        fail("NoSpreadExists", "spread of t-flats requires (t+1) | (d+1)");
    if (F.e() == 1 && ipow(F.q(), t + 1) <= 64) return spread_field_reduction(d, F, t);
    return spread_search(d, F, t);
}

bool collinear(const gf::Field& F, const PointSet& pts, int a, int b, int c) {
    gf::Matrix M{pts.vectors[a], pts.vectors[b], pts.vectors[c]};
    return gf::rank(F, M) <= 2;
}

namespace {

bool is_cap(const gf::Field& F, const PointSet& pts, const std::vector<int>& cap) {
    for (size_t i = 0; i < cap.size(); ++i)
        for (size_t j = i + 1; j < cap.size(); ++j)
            for (size_t k = j + 1; k < cap.size(); ++k)
                if (collinear(F, pts, cap[i], cap[j], cap[k])) return false;
    return true;
}

std::vector<int> cap_search(const gf::Field& F, const PointSet& pts, int goal) {
    int np = pts.size();
    std::vector<int> cur;
    long long nodes = 0;
    const long long budget = 1'000'000;
    std::function<bool(int)> dfs = [&](int start) -> bool {
        if (int(cur.size()) == goal) return true;
        if (++nodes > budget) fail("SearchFailed", "cap search budget exceeded");
        for (int p = start; p < np; ++p) {
            bool ok = true;
            for (size_t i = 0; i < cur.size() && ok; ++i)
                for (size_t j = i + 1; j < cur.size() && ok; ++j)
                    if (collinear(F, pts, cur[i], cur[j], p)) ok = false;
            if (!ok) continue;
            cur.push_back(p);
            if (dfs(p + 1)) return true;
            cur.pop_back();
        }
        return false;
    };
    if (!dfs(0)) fail("SearchFailed", "no cap of requested size found");
    return cur;
}

}  // namespace

std::vector<int> find_cap(int d, const gf::Field& F, int size_goal) {
    if (d != 2 && d != 3) fail("InvalidParameter", "caps supported for d in {2,3}");
    int q = F.q();
    PointSet pts = enumerate_points(Kind::Projective, d, F);
    int max_known = (d == 2) ? (q % 2 == 1 ? q + 1 : q + 2) : q * q + 1;
    int goal = size_goal > 0 ? size_goal : max_known;

    std::vector<int> cap;
    if (d == 2) {
        // conic x0*x2 = x1^2: points (1, s, s^2) and (0, 0, 1)
        for (gf::Elem s = 0; s < q; ++s)
            cap.push_back(pts.label_of({1, s, F.mul(s, s)}));
        cap.push_back(pts.label_of({0, 0, 1}));
        if (q % 2 == 0) cap.push_back(pts.label_of({0, 1, 0}));  // nucleus
    } else {
        // elliptic quadric f(x0,x1) + x2*x3 = 0 with f irreducible binary form
        gf::Elem bb = 0, cc = 0;
        bool found = false;
        for (gf::Elem b = 0; b < q && !found; ++b)
            for (gf::Elem c = 1; c < q && !found; ++c) {
                bool has_root = false;
                for (gf::Elem x = 0; x < q; ++x)
                    if (F.add(F.add(F.mul(x, x), F.mul(b, x)), c) == 0) has_root = true;
                if (!has_root) {
                    bb = b;
                    cc = c;
                    found = true;
                }
            }
        if (!found) fail("SearchFailed", "no irreducible quadratic found");
        for (int lbl = 0; lbl < pts.size(); ++lbl) {
            const auto& v = pts.vectors[lbl];
            gf::Elem f = F.add(F.add(F.mul(v[0], v[0]), F.mul(bb, F.mul(v[0], v[1]))),
                               F.mul(cc, F.mul(v[1], v[1])));
            if (F.add(f, F.mul(v[2], v[3])) == 0) cap.push_back(lbl);
        }
    }

    std::sort(cap.begin(), cap.end());
    if (int(cap.size()) >= goal) {
        cap.resize(goal);
        if (is_cap(F, pts, cap)) return cap;
    }
    return cap_search(F, pts, goal);
}

}  // namespace dropout::geom

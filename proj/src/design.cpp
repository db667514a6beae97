#include "dropout/design.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace dropout::design {

long long binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void Design::validate() const {
    int n = n_layers();
    for (int v : layer_sizes)
        if (v < 1) fail("InvalidDesign", "layer size must be positive");
    for (size_t s = 0; s < blocks.size(); ++s) {
        const auto& B = blocks[s];
        if (int(B.sub.size()) != n)
            fail("InvalidDesign", "block " + std::to_string(s) + " has wrong layer count");
        for (int i = 0; i < n; ++i) {
            const auto& C = B.sub[i];
            if (C.empty())
                fail("InvalidDesign", "block " + std::to_string(s) + " has an empty sub-block");
            for (size_t j = 0; j < C.size(); ++j) {
                if (C[j] < 0 || C[j] >= layer_sizes[i])
                    fail("InvalidDesign", "point out of range in block " + std::to_string(s));
                if (j > 0 && C[j] <= C[j - 1])
                    fail("InvalidDesign",
                         "sub-block not sorted/duplicate-free in block " + std::to_string(s));
            }
        }
    }
}

bool Design::same_design(const Design& o) const {
    if (layer_sizes != o.layer_sizes) return false;
    auto a = blocks, b = o.blocks;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

std::string CounterExample::describe() const {
    std::ostringstream os;
    os << "window " << window + 1 << ", sub-type (";
    for (size_t i = 0; i < sub_type.size(); ++i) os << (i ? "," : "") << sub_type[i];
    os << "): counts " << count_a << " vs " << count_b;
    return os.str();
}

long long Profile::lambda(int window, const TypeVector& full_type) const {
    return windows.at(window).at(full_type);
}

namespace {

// Enumerate all g-subsets of a sorted point list, invoking fn(subset).
void for_each_subset(const std::vector<int>& pts, int g,
                     const std::function<void(const std::vector<int>&)>& fn) {
    int n = int(pts.size());
    if (g > n) return;
    std::vector<int> idx(g);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> cur(g);
    while (true) {
        for (int i = 0; i < g; ++i) cur[i] = pts[idx[i]];
        fn(cur);
        int i = g - 1;
        while (i >= 0 && idx[i] == n - g + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < g; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::vector<std::vector<int>> decode(const std::vector<int>& key) {
    std::vector<std::vector<int>> pts;
    size_t i = 0;
    while (i < key.size()) {
        int len = key[i++];
        pts.emplace_back(key.begin() + i, key.begin() + i + len);
        i += len;
    }
    return pts;
}

// Encode a cross-layer selection as a flat key.
std::vector<int> encode(const std::vector<std::vector<int>>& pts) {
    std::vector<int> key;
    for (const auto& layer : pts) {
        key.push_back(int(layer.size()));
        key.insert(key.end(), layer.begin(), layer.end());
    }
    return key;
}

// Recursively enumerate cross-layer selections drawn from per-layer pools.
void for_each_selection(const std::vector<const std::vector<int>*>& pools,
                        const TypeVector& g, size_t layer,
                        std::vector<std::vector<int>>& cur,
                        const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    if (layer == pools.size()) {
        fn(cur);
        return;
    }
    if (g[layer] == 0) {
        cur[layer].clear();
        for_each_selection(pools, g, layer + 1, cur, fn);
        return;
    }
    for_each_subset(*pools[layer], g[layer], [&](const std::vector<int>& sub) {
        cur[layer] = sub;
        for_each_selection(pools, g, layer + 1, cur, fn);
    });
}

TypeVector cyclic_shift(const TypeVector& d, int by) {
    int t = int(d.size());
    TypeVector s(t);
    for (int i = 0; i < t; ++i) s[i] = d[(i + by) % t];
    return s;
}

}  // namespace

Profile verify(const Design& D, const TypeVector& type, bool shifted, long long budget) {
    D.validate();
    int t = int(type.size());
    int n = D.n_layers();
    if (t < 1 || t > n) fail("InvalidParameter", "type length must be in [1, n]");
    for (int d : type)
        if (d < 1) fail("InvalidParameter", "type entries must be positive");

    Profile prof;
    prof.windows.resize(n - t + 1);

    // cost pre-check over all windows and sub-types
    long long cost = 0;
    for (int w = 0; w <= n - t; ++w) {
        TypeVector wt = shifted ? cyclic_shift(type, w) : type;
        std::vector<TypeVector> subs;
        TypeVector g(t, 0);
        while (true) {
            if (std::accumulate(g.begin(), g.end(), 0) >= 1) {
                long long sel = 1;
                for (int i = 0; i < t; ++i) sel *= binomial(D.layer_sizes[w + i], g[i]);
                cost += sel;
            }
            int i = t - 1;
            while (i >= 0 && ++g[i] > wt[i]) g[i--] = 0;
            if (i < 0) break;
        }
    }
    if (cost > budget) fail("BudgetExceeded", "verification would need " + std::to_string(cost) +
                                                  " containment checks");

    for (int w = 0; w <= n - t; ++w) {
        TypeVector wt = shifted ? cyclic_shift(type, w) : type;
        TypeVector g(t, 0);
        while (true) {
            if (std::accumulate(g.begin(), g.end(), 0) >= 1) {
                // count occurrences of each selection across blocks
                std::map<std::vector<int>, long long> counts;
                for (const auto& B : D.blocks) {
                    std::vector<const std::vector<int>*> pools(t);
                    bool feasible = true;
                    for (int i = 0; i < t; ++i) {
                        pools[i] = &B.sub[w + i];
                        if (int(pools[i]->size()) < g[i]) feasible = false;
                    }
                    if (!feasible) continue;
                    std::vector<std::vector<int>> cur(t);
                    for_each_selection(pools, g, 0, cur,
                                       [&](const std::vector<std::vector<int>>& sel) {
                                           ++counts[encode(sel)];
                                       });
                }
                long long total = 1;
                for (int i = 0; i < t; ++i) total *= binomial(D.layer_sizes[w + i], g[i]);
                long long lam = counts.empty() ? 0 : counts.begin()->second;
                bool constant = true;
                std::vector<int> bad_key;
                long long bad_count = 0;
                for (const auto& [key, c] : counts) {
                    if (c != lam) {
                        constant = false;
                        bad_key = key;
                        bad_count = c;
                        break;
                    }
                }
                if (constant && lam != 0 && int(counts.size()) != total) {
                    // some selection was never covered
                    constant = false;
                    bad_count = 0;
                    // locate an uncovered selection for the witness
                    std::vector<const std::vector<int>*> pools(t);
                    std::vector<std::vector<int>> full(t);
                    for (int i = 0; i < t; ++i) {
                        full[i].resize(D.layer_sizes[w + i]);
                        std::iota(full[i].begin(), full[i].end(), 0);
                        pools[i] = &full[i];
                    }
                    std::vector<std::vector<int>> cur(t);
                    bool found = false;
                    for_each_selection(pools, g, 0, cur,
                                       [&](const std::vector<std::vector<int>>& sel) {
                                           if (found) return;
                                           auto key = encode(sel);
                                           if (!counts.count(key)) {
                                               bad_key = key;
                                               found = true;
                                           }
                                       });
                }
                if (!constant) {
                    CounterExample ce;
                    ce.window = w;
                    ce.sub_type = g;
                    ce.count_a = lam;
                    ce.count_b = bad_count;
                    ce.a.window = ce.b.window = w;
                    if (!counts.empty()) ce.a.pts = decode(counts.begin()->first);
                    if (!bad_key.empty()) ce.b.pts = decode(bad_key);
                    prof.ok = false;
                    prof.counterexample = ce;
                    return prof;
                }
                if (lam == 0) prof.degenerate = true;
                prof.windows[w][g] = lam;
            }
            int i = t - 1;
            while (i >= 0 && ++g[i] > wt[i]) g[i--] = 0;
            if (i < 0) break;
        }
    }
    prof.ok = true;
    return prof;
}

std::optional<std::vector<long long>> constant_subtype(const Design& D, const TypeVector& g,
                                                       long long budget) {
    D.validate();
    int t = int(g.size());
    int n = D.n_layers();
    if (t < 1 || t > n) fail("InvalidParameter", "sub-type length must be in [1, n]");
    if (std::accumulate(g.begin(), g.end(), 0) < 1)
        fail("InvalidParameter", "sub-type must select at least one point");

    long long cost = 0;
    for (int w = 0; w <= n - t; ++w) {
        long long sel = 1;
        for (int i = 0; i < t; ++i) sel *= binomial(D.layer_sizes[w + i], g[i]);
        cost += sel;
    }
    if (cost > budget) fail("BudgetExceeded", "sub-type check too large");

    std::vector<long long> lambdas;
    for (int w = 0; w <= n - t; ++w) {
        std::map<std::vector<int>, long long> counts;
        for (const auto& B : D.blocks) {
            std::vector<const std::vector<int>*> pools(t);
            bool feasible = true;
            for (int i = 0; i < t; ++i) {
                pools[i] = &B.sub[w + i];
                if (int(pools[i]->size()) < g[i]) feasible = false;
            }
            if (!feasible) continue;
            std::vector<std::vector<int>> cur(t);
            for_each_selection(pools, g, 0, cur,
                               [&](const std::vector<std::vector<int>>& sel) {
                                   ++counts[encode(sel)];
                               });
        }
        long long total = 1;
        for (int i = 0; i < t; ++i) total *= binomial(D.layer_sizes[w + i], g[i]);
        long long lam = counts.empty() ? 0 : counts.begin()->second;
        for (const auto& [key, c] : counts)
            if (c != lam) return std::nullopt;
        if (lam != 0 && int(counts.size()) != total) return std::nullopt;
        lambdas.push_back(lam);
    }
    return lambdas;
}

IdentityCheck concurrence_identity_check(const Design& D, const TypeVector& type,
                                         const Profile& profile) {
    if (!profile.ok) fail("InvalidParameter", "identity check needs a verified profile");
    IdentityCheck chk;
    int t = int(type.size());
    int n = D.n_layers();
    for (int w = 0; w <= n - t; ++w) {
        long long lhs = profile.windows[w].at(type);
        for (int i = 0; i < t; ++i) lhs *= binomial(D.layer_sizes[w + i], type[i]);
        long long rhs = 0;
        for (const auto& B : D.blocks) {
            long long term = 1;
            for (int i = 0; i < t; ++i)
                term *= binomial((long long)B.sub[w + i].size(), type[i]);
            rhs += term;
        }
        chk.lhs.push_back(lhs);
        chk.rhs.push_back(rhs);
        if (lhs != rhs) chk.ok = false;
    }
    if (n == 2 && t == 2 && type == TypeVector{1, 1} && !D.blocks.empty()) {
        size_t k1 = D.blocks[0].sub[0].size(), k2 = D.blocks[0].sub[1].size();
        bool constant = std::all_of(D.blocks.begin(), D.blocks.end(), [&](const SuperBlock& B) {
            return B.sub[0].size() == k1 && B.sub[1].size() == k2;
        });
        if (constant) {
            long long lhs1 = (long long)D.n_blocks() * k1 * k2;
            long long rhs1 =
                profile.windows[0].at(type) * D.layer_sizes[0] * D.layer_sizes[1];
            chk.property1 = {lhs1, rhs1};
            if (lhs1 != rhs1) chk.ok = false;
        }
    }
    return chk;
}

Design restrict(const Design& D, const std::vector<int>& layer_indices) {
    if (layer_indices.empty()) fail("InvalidParameter", "need at least one layer");
    for (size_t i = 0; i < layer_indices.size(); ++i) {
        int li = layer_indices[i];
        if (li < 0 || li >= D.n_layers()) fail("InvalidParameter", "layer index out of range");
        if (i > 0 && li <= layer_indices[i - 1])
            fail("InvalidParameter", "layer indices must be strictly increasing");
    }
    Design R;
    for (int li : layer_indices) R.layer_sizes.push_back(D.layer_sizes[li]);
    for (const auto& B : D.blocks) {
        SuperBlock nb;
        for (int li : layer_indices) nb.sub.push_back(B.sub[li]);
        R.blocks.push_back(std::move(nb));
    }
    return R;
}

std::vector<std::vector<int>> restricted_set(const Design& D,
                                             const std::map<int, std::vector<int>>& X,
                                             int target_layer) {
    if (target_layer < 0 || target_layer >= D.n_layers())
        fail("InvalidParameter", "target layer out of range");
    std::vector<std::vector<int>> out;
    for (const auto& B : D.blocks) {
        bool contains = true;
        for (const auto& [layer, pts] : X) {
            const auto& C = B.sub[layer];
            for (int p : pts)
                if (!std::binary_search(C.begin(), C.end(), p)) {
                    contains = false;
                    break;
                }
            if (!contains) break;
        }
        if (contains) out.push_back(B.sub[target_layer]);
    }
    return out;
}

RegularTwise is_regular_twise(const std::vector<std::vector<int>>& blocks, int v, int t,
                              long long budget) {
    if (t < 1) fail("InvalidParameter", "t must be at least 1");
    long long cost = 0;
    for (int u = 1; u <= t; ++u) cost += binomial(v, u);
    if (cost > budget) fail("BudgetExceeded", "too many subsets to enumerate");

    RegularTwise res;
    std::vector<std::vector<int>> sorted = blocks;
    for (auto& B : sorted) std::sort(B.begin(), B.end());
    std::vector<int> all(v);
    std::iota(all.begin(), all.end(), 0);
    for (int u = 1; u <= t; ++u) {
        long long lam = -1;
        bool constant = true;
        for_each_subset(all, u, [&](const std::vector<int>& sub) {
            if (!constant) return;
            long long c = 0;
            for (const auto& B : sorted) {
                bool in = true;
                for (int p : sub)
                    if (!std::binary_search(B.begin(), B.end(), p)) {
                        in = false;
                        break;
                    }
                if (in) ++c;
            }
            if (lam < 0)
                lam = c;
            else if (c != lam)
                constant = false;
        });
        if (!constant) return res;  // ok stays false
        res.lambdas.push_back(lam);
    }
    res.ok = true;
    return res;
}

ProperReport is_proper(const Design& D) {
    for (size_t s = 0; s < D.blocks.size(); ++s)
        for (int i = 0; i < D.n_layers(); ++i)
            if (int(D.blocks[s].sub[i].size()) == D.layer_sizes[i])
                return {false, int(s), i};
    return {};
}

Design complement(const Design& D) {
    auto pr = is_proper(D);
    if (!pr.proper)
        fail("NotProper", "block " + std::to_string(pr.block) + " fills layer " +
                              std::to_string(pr.layer + 1));
    Design C;
    C.layer_sizes = D.layer_sizes;
    for (const auto& B : D.blocks) {
        SuperBlock nb;
        for (int i = 0; i < D.n_layers(); ++i) {
            std::vector<int> comp;
            const auto& sub = B.sub[i];
            size_t j = 0;
            for (int p = 0; p < D.layer_sizes[i]; ++p) {
                if (j < sub.size() && sub[j] == p)
                    ++j;
                else
                    comp.push_back(p);
            }
            nb.sub.push_back(std::move(comp));
        }
        C.blocks.push_back(std::move(nb));
    }
    return C;
}

Design delete_points(const Design& D, const std::vector<std::pair<int, int>>& R) {
    std::vector<std::set<int>> del(D.n_layers());
    for (auto [layer, pt] : R) {
        if (layer < 0 || layer >= D.n_layers() || pt < 0 || pt >= D.layer_sizes[layer])
            fail("InvalidParameter", "deleted point out of range");
        del[layer].insert(pt);
    }
    // precondition: R must not swallow any sub-block
    for (size_t s = 0; s < D.blocks.size(); ++s)
        for (int i = 0; i < D.n_layers(); ++i) {
            const auto& sub = D.blocks[s].sub[i];
            if (std::all_of(sub.begin(), sub.end(), [&](int p) { return del[i].count(p); }))
                fail("SubBlockSwallowed", "sub-block of block " + std::to_string(s) +
                                              " in layer " + std::to_string(i + 1) +
                                              " is entirely deleted");
        }
    // compact relabeling of survivors, order-preserving
    std::vector<std::vector<int>> relabel(D.n_layers());
    Design out;
    for (int i = 0; i < D.n_layers(); ++i) {
        relabel[i].assign(D.layer_sizes[i], -1);
        int next = 0;
        for (int p = 0; p < D.layer_sizes[i]; ++p)
            if (!del[i].count(p)) relabel[i][p] = next++;
        out.layer_sizes.push_back(next);
        if (next == 0) fail("InvalidParameter", "a layer would become empty");
    }
    for (const auto& B : D.blocks) {
        SuperBlock nb;
        for (int i = 0; i < D.n_layers(); ++i) {
            std::vector<int> sub;
            for (int p : B.sub[i])
                if (relabel[i][p] >= 0) sub.push_back(relabel[i][p]);
            nb.sub.push_back(std::move(sub));
        }
        out.blocks.push_back(std::move(nb));
    }
    return out;
}

Design extend(const Design& D, const TypeVector& type, int n) {
    int t = D.n_layers();
    if (int(type.size()) != t)
        fail("InvalidParameter", "type length must equal the layer count");
    if (n < t) fail("InvalidParameter", "target layer count must be at least t");
    for (int s = 0; s < t; ++s) {
        TypeVector shifted = type;
        std::rotate(shifted.begin(), shifted.begin() + s, shifted.end());
        Profile p = verify(D, shifted);
        if (!p.ok)
            fail("ShiftTypeMissing", "design fails verification at cyclic shift " +
                                         std::to_string(s) + " of the type");
    }
    Design E;
    for (int i = 0; i < n; ++i) E.layer_sizes.push_back(D.layer_sizes[i % t]);
    for (const auto& B : D.blocks) {
        SuperBlock nb;
        for (int i = 0; i < n; ++i) nb.sub.push_back(B.sub[i % t]);
        E.blocks.push_back(std::move(nb));
    }
    return E;
}

Design direct_product(const std::vector<Design>& components) {
    if (components.empty()) fail("InvalidParameter", "need at least one component");
    Design P;
    P.blocks.push_back(SuperBlock{});
    for (const auto& comp : components) {
        for (int v : comp.layer_sizes) P.layer_sizes.push_back(v);
        std::vector<SuperBlock> next;
        next.reserve(P.blocks.size() * comp.blocks.size());
        for (const auto& acc : P.blocks)
            for (const auto& B : comp.blocks) {
                SuperBlock nb = acc;
                for (const auto& sub : B.sub) nb.sub.push_back(sub);
                next.push_back(std::move(nb));
            }
        P.blocks = std::move(next);
    }
    return P;
}

UniformityReport uniformity_report(const Design& D, const Profile* profile,
                                   const TypeVector* type) {
    UniformityReport rep;
    if (D.layer_sizes.empty() || D.blocks.empty()) {
        rep.witness = "empty design";
        return rep;
    }
    int v = D.layer_sizes[0];
    for (int vi : D.layer_sizes)
        if (vi != v) {
            rep.witness = "layer sizes differ";
            return rep;
        }
    int k = int(D.blocks[0].sub[0].size());
    for (const auto& B : D.blocks)
        for (const auto& sub : B.sub)
            if (int(sub.size()) != k) {
                rep.witness = "sub-block sizes differ";
                return rep;
            }
    rep.uniform = true;
    rep.v = v;
    rep.k = k;
    if (profile && profile->ok && type) {
        rep.lambda = profile->windows[0].at(*type);
        long long num = D.n_blocks(), den = 1;
        for (int d : *type) {
            num *= binomial(k, d);
            den *= binomial(v, d);
        }
        rep.lambda_formula = num / den;
    }
    return rep;
}

}  // namespace dropout::design

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dropout/error.hpp"

namespace dropout::design {

// One scheduled dropout pattern: a sub-block per layer, each a sorted,
// duplicate-free, non-empty list of layer-local point labels.
struct SuperBlock {
    std::vector<std::vector<int>> sub;

    bool operator==(const SuperBlock&) const = default;
    bool operator<(const SuperBlock& o) const { return sub < o.sub; }
};

// Layered block system. Blocks form a multiset; duplicates are meaningful.
struct Design {
    std::vector<int> layer_sizes;      // v_1 .. v_n
    std::vector<SuperBlock> blocks;

    int n_layers() const { return int(layer_sizes.size()); }
    int n_blocks() const { return int(blocks.size()); }

    // Throws InvalidDesign if a sub-block is empty, unsorted, duplicated
    // or out of range, or a block has the wrong number of sub-blocks.
    void validate() const;

    // Multiset equality of blocks (after canonical sorting) plus equal layers.
    bool same_design(const Design& o) const;
};

using TypeVector = std::vector<int>;  // (d_1, .., d_t), all >= 1

// A cross-layer point selection inside one window: g_j points from each layer.
struct Selection {
    int window = 0;                      // 0-based window start
    std::vector<std::vector<int>> pts;   // per window layer, sorted
};

struct CounterExample {
    int window = 0;
    TypeVector sub_type;
    Selection a, b;
    long long count_a = 0, count_b = 0;
    std::string describe() const;
};

// Full concurrence profile: for every window and every componentwise
// sub-type g <= d with sum >= 1, the constant count lambda^{(i)}_g.
struct Profile {
    bool ok = false;
    bool degenerate = false;  // some lambda is 0
    // windows[i][g] = lambda
    std::vector<std::map<TypeVector, long long>> windows;
    std::optional<CounterExample> counterexample;

    // lambda of the full declared type at window i (profile must be ok).
    long long lambda(int window, const TypeVector& full_type) const;
};

inline constexpr long long kVerifyBudget = 100'000'000;

// Exhaustive verification of window regularity over every
// consecutive window. With shifted = true, window i is checked against the
// cyclic shift of the type by i positions instead of the type verbatim.
Profile verify(const Design& D, const TypeVector& type, bool shifted = false,
               long long budget = kVerifyBudget);

// Constancy check of a single sub-type g over every consecutive window;
// returns the per-window constants, or nullopt when some window is not
// constant for g.
std::optional<std::vector<long long>> constant_subtype(const Design& D, const TypeVector& g,
                                                       long long budget = kVerifyBudget);

struct IdentityCheck {
    bool ok = true;
    // per window: lambda * prod C(v_j, d_j) vs sum_s prod C(|C_sj|, d_j)
    std::vector<long long> lhs, rhs;
    // Two layers, type (1,1), constant sub-block sizes:
    // b k1 k2 = lambda v1 v2; unset when not applicable.
    std::optional<std::pair<long long, long long>> property1;
};

// Block-counting identity, using a verified profile.
IdentityCheck concurrence_identity_check(const Design& D, const TypeVector& type,
                                         const Profile& profile);

// Keep only the chosen layers (strictly increasing indices, 0-based).
Design restrict(const Design& D, const std::vector<int>& layer_indices);

// Blocks' target-layer parts among blocks containing every point of X.
// X maps layer index -> required points in that layer.
std::vector<std::vector<int>> restricted_set(const Design& D,
                                             const std::map<int, std::vector<int>>& X,
                                             int target_layer);

struct RegularTwise {
    bool ok = false;
    std::vector<long long> lambdas;  // lambda_1 .. lambda_t when ok
};

// Regular t-wise balance of a plain block multiset over v points.
RegularTwise is_regular_twise(const std::vector<std::vector<int>>& blocks, int v, int t,
                              long long budget = 10'000'000);

struct ProperReport {
    bool proper = true;
    int block = -1, layer = -1;  // witness when not proper
};

ProperReport is_proper(const Design& D);

// Per-sub-block complement; requires a proper design.
Design complement(const Design& D);

// Delete the points R (pairs of 0-based layer index, point). Surviving
// points are relabeled compactly in order. Throws SubBlockSwallowed when
// some sub-block is entirely inside R.
Design delete_points(const Design& D, const std::vector<std::pair<int, int>>& R);

// Cyclic layer extension of a uniform design to n layers.
// Requires verification at the type and at all of its cyclic shifts.
Design extend(const Design& D, const TypeVector& type, int n);

// All concatenations of component blocks over stacked layer groups.
Design direct_product(const std::vector<Design>& components);

struct UniformityReport {
    bool uniform = false;
    int v = 0, k = 0;
    // witness when not uniform: "layer" or "block" mismatch
    std::string witness;
    // lambda and the closed-form value, when a verified profile is supplied
    std::optional<long long> lambda, lambda_formula;
};

UniformityReport uniformity_report(const Design& D, const Profile* profile = nullptr,
                                   const TypeVector* type = nullptr);

long long binomial(long long n, long long k);

}  // namespace dropout::design

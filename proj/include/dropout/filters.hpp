#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dropout/error.hpp"

namespace dropout::filters {

using Mat = std::vector<std::vector<int>>;  // 0/1 entries

// Multiset of differences a-b mod v over ordered pairs of distinct elements.
std::vector<int> delta(const std::vector<int>& B, int v);

struct FamilyParams {
    int k = 0, r = 0;
    long long lambda = 0;
};

struct VerifyResult {
    bool ok = false;
    FamilyParams params;
    std::string violation;  // which condition failed, with a witness
};

// Conditions (i)-(iii) on subsets of Z_v, checked exhaustively.
VerifyResult verify_difference_family(int v, const std::vector<std::vector<int>>& blocks);

// Circulant matrix: row 0 has ones at the columns of B, row j is the
// cyclic right-shift of row 0 by j.
Mat cyclic_matrix(const std::vector<int>& B, int v);

// Conditions (1)-(3) on a collection of v x v 0/1 matrices.
VerifyResult verify_filter_family(const std::vector<Mat>& family);

// P H Q for explicit row/column permutations (as index maps).
std::vector<Mat> scramble(const std::vector<Mat>& family, const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm);

// Seed-deterministic random permutations.
std::vector<Mat> scramble_seeded(const std::vector<Mat>& family, uint64_t seed);

// Exhaustive search over cyclic developments of k-subset base blocks.
// Deterministic order; families with r > r_max are skipped.
std::vector<std::vector<std::vector<int>>> search_difference_families(int v, int k, int r_max);

// "DFILTER 1" text format.
std::string write_dfilter(const std::vector<Mat>& family, int v);
std::vector<Mat> read_dfilter(std::istream& in);

}  // namespace dropout::filters

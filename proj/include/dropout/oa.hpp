#pragma once

#include <optional>
#include <vector>

#include "dropout/design.hpp"
#include "dropout/gf.hpp"

namespace dropout::oa {

// Partitioned matrix over GF(q) whose row space expands to a multi-split
// orthogonal array. Column independence requirements are checked
// exhaustively at construction.
struct GeneratorMatrix {
    gf::Field field;
    gf::Matrix columns;           // s x (k_1 + .. + k_t)
    std::vector<int> partition;   // (k_1, .., k_t)
    std::vector<int> type;        // (d_1, .., d_t)

    int rows() const { return int(columns.size()); }
    int cols() const { return columns.empty() ? 0 : int(columns[0].size()); }
};

// Validates the column-independence conditions; throws InvalidGenerator.
GeneratorMatrix make_generator(gf::Field field, gf::Matrix columns,
                               std::vector<int> partition, std::vector<int> type);

struct MultiSplitOA {
    int q = 0;
    std::vector<int> partition, type;
    long long index = 0;  // rho = q^{s - sum d_i}
    std::vector<std::vector<gf::Elem>> rows;
    bool verified = false;  // brute-force tuple check ran within budget
};

inline constexpr long long kOaVerifyBudget = 10'000'000;

// Rows {xG} in lexicographic message order; tuple counts re-checked by
// brute force when within budget. Throws VerificationFailed on mismatch.
MultiSplitOA expand(const GeneratorMatrix& G, long long budget = kOaVerifyBudget);

// Column j (0-based) of sub-matrix i maps symbol s to s + j*q; each row
// becomes a super-block. Layer sizes are q*k_i.
design::Design relabel(const MultiSplitOA& A);

// rho copies of T_1 x .. x T_t where T_i are the q-symbol groups of layer i.
std::vector<design::SuperBlock> supplementary_blocks(const std::vector<int>& partition, int q,
                                                     long long copies);

struct GeneratorDesignResult {
    design::Design design;
    long long rho = 0;
    // lambda of the exact declared type per window, always constant or throw
    std::vector<long long> full_type_lambda;
    // whole regular profile at the declared type holds (always true for 1^t)
    bool fully_regular = false;
};

// Array-to-design construction. Types with some d_i >= 2 require the
// supplement; throws TypeNeedsSupplement otherwise.
GeneratorDesignResult design_from_generator(const GeneratorMatrix& G, bool with_supplement);

enum class GeometrySource {
    PgPoints,   // all points of PG(d,q) as columns, type (1,1)
    Cap,        // cap points, type (1,1,1)
    LineSplit,  // q+1 points of a line | q^2 points off it, type (2,1)
    TwoLines,   // two lines through a common point, punctured, type (2,1)/(1,2)
};

GeneratorMatrix generator_from_geometry(GeometrySource source, int d, int q,
                                        const std::vector<int>& partition,
                                        const std::vector<int>& type);

}  // namespace dropout::oa

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dropout/error.hpp"

namespace dropout::optlab {

using IntMat = std::vector<std::vector<long long>>;

struct IncidenceMatrix {
    int regime = 0;  // 1..4
    std::vector<std::vector<int>> rows;
    int n() const { return int(rows.size()); }
    int v() const { return rows.empty() ? 0 : int(rows[0].size()); }
};

struct SampleParams {
    int N = 21, v = 7, ones = 63;
    int column_sum = 9, row_sum = 3;
};

// Four random 0/1-matrix regimes:
//  1: uniform choice of `ones` cells
//  2: independent uniform column_sum-subsets per column
//  3: independent uniform row_sum-subsets per row
//  4: both margins exact, card-dealing with restart on conflict
IncidenceMatrix generate_incidence(int regime, const SampleParams& p, uint64_t seed);

// M = X^T X as exact integers.
IntMat info_matrix(const IncidenceMatrix& X);

// Exact integer determinant via fraction-free (Bareiss) elimination.
long long det_exact(const IntMat& M);

struct AlphaBeta {
    long long alpha = 0, beta = 0;
};

// (alpha, beta) iff M = alpha I + beta J.
std::optional<AlphaBeta> detect_alpha_beta(const IntMat& M);

struct RLParams {
    long long r = 0, lambda = 0;
};

// Rows as blocks over v points: (r, lambda) iff every point lies in exactly
// r blocks and every pair of points in exactly lambda.
std::optional<RLParams> rl_design_check(const IncidenceMatrix& X);

struct RegimeSummary {
    int regime = 0;
    int samples = 0;
    long long min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    int achieved_alpha_beta_count = 0;
    std::vector<long long> dets;  // per-sample, in seed order
};

struct ExperimentResult {
    std::vector<RegimeSummary> regimes;  // one per regime 1..4
};

ExperimentResult run_experiment(int samples_per_regime, const SampleParams& p, uint64_t seed);

// Per-sample seed derivation used by run_experiment, exposed so callers can
// regenerate any individual sample.
uint64_t sample_seed(uint64_t master, int regime, int index);

// `regime,samples,min,q1,median,q3,max,achieved_alpha_beta_count` rows.
std::string experiment_csv(const ExperimentResult& r);

// 21x7 matrix: three copies of the 7x7 cyclic Fano-plane incidence matrix.
IncidenceMatrix tripled_fano();

}  // namespace dropout::optlab

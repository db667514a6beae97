#include "dropout/optlab.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace dropout::optlab {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// uniform k-subset of [0, n) by partial Fisher-Yates
std::vector<int> random_subset(std::mt19937_64& rng, int n, int k) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
        int j = i + int(rng() % uint64_t(n - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

uint64_t sample_seed(uint64_t master, int regime, int index) {
    return splitmix64(splitmix64(master ^ (uint64_t(regime) << 32)) ^ uint64_t(index));
}

IncidenceMatrix generate_incidence(int regime, const SampleParams& p, uint64_t seed) {
    if (regime < 1 || regime > 4) fail("InvalidParameter", "regime must be 1..4");
    if (p.N < 1 || p.v < 1) fail("InconsistentMargins", "need positive dimensions");
    if (p.ones < 0 || p.ones > p.N * p.v)
        fail("InconsistentMargins", "ones count out of range");

    std::mt19937_64 rng(seed);
    IncidenceMatrix X;
    X.regime = regime;
    X.rows.assign(size_t(p.N), std::vector<int>(size_t(p.v), 0));

    switch (regime) {
        case 1: {
            for (int cell : random_subset(rng, p.N * p.v, p.ones))
                X.rows[cell / p.v][cell % p.v] = 1;
            break;
        }
        case 2: {
            if (p.column_sum < 0 || p.column_sum > p.N)
                fail("InconsistentMargins", "column sum out of range");
            for (int c = 0; c < p.v; ++c)
                for (int r : random_subset(rng, p.N, p.column_sum)) X.rows[r][c] = 1;
            break;
        }
        case 3: {
            if (p.row_sum < 0 || p.row_sum > p.v)
                fail("InconsistentMargins", "row sum out of range");
            for (int r = 0; r < p.N; ++r)
                for (int c : random_subset(rng, p.v, p.row_sum)) X.rows[r][c] = 1;
            break;
        }
        case 4: {
            if ((long long)p.N * p.row_sum != p.ones ||
                (long long)p.v * p.column_sum != p.ones)
                fail("InconsistentMargins", "regime 4 needs N*row_sum = v*column_sum = ones");
            // deal a deck of column labels (column_sum copies each) into rows of
            // row_sum cards; restart whenever a row would repeat a column
            while (true) {
                std::vector<int> deck;
                for (int c = 0; c < p.v; ++c)
                    for (int m = 0; m < p.column_sum; ++m) deck.push_back(c);
                for (int i = int(deck.size()) - 1; i > 0; --i) {
                    int j = int(rng() % uint64_t(i + 1));
                    std::swap(deck[i], deck[j]);
                }
                bool conflict = false;
                for (auto& row : X.rows) std::fill(row.begin(), row.end(), 0);
                for (int r = 0; r < p.N && !conflict; ++r)
                    for (int i = 0; i < p.row_sum; ++i) {
                        int c = deck[size_t(r) * p.row_sum + i];
                        if (X.rows[r][c]) {
                            conflict = true;
                            break;
                        }
                        X.rows[r][c] = 1;
                    }
                if (!conflict) break;
            }
            break;
        }
    }
    return X;
}

IntMat info_matrix(const IncidenceMatrix& X) {
    int v = X.v();
    IntMat M(v, std::vector<long long>(v, 0));
    for (const auto& row : X.rows)
        for (int i = 0; i < v; ++i)
            if (row[i])
                for (int j = 0; j < v; ++j)
                    if (row[j]) ++M[i][j];
    return M;
}

long long det_exact(const IntMat& M) {
    int n = int(M.size());
    for (const auto& row : M)
        if (int(row.size()) != n) fail("InvalidParameter", "matrix must be square");
    if (n == 0) return 1;

    std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = M[i][j];

    int sign = 1;
    __int128 prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    __int128 d = a[n - 1][n - 1];
    return (long long)(sign > 0 ? d : -d);
}

std::optional<AlphaBeta> detect_alpha_beta(const IntMat& M) {
    int n = int(M.size());
    if (n == 0) return std::nullopt;
    for (const auto& row : M)
        if (int(row.size()) != n) fail("InvalidParameter", "matrix must be square");

    long long beta = n > 1 ? M[0][1] : 0;
    long long diag = M[0][0];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                if (M[i][j] != diag) return std::nullopt;
            } else if (M[i][j] != beta) {
                return std::nullopt;
            }
        }
    return AlphaBeta{diag - beta, beta};
}

std::optional<RLParams> rl_design_check(const IncidenceMatrix& X) {
    int v = X.v();
    if (v == 0) return std::nullopt;
    auto M = info_matrix(X);
    long long r = M[0][0];
    long long lambda = v > 1 ? M[0][1] : r;
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            long long want = (i == j) ? r : lambda;
            if (M[i][j] != want) return std::nullopt;
        }
    return RLParams{r, lambda};
}

namespace {

long long sorted_quantile(const std::vector<long long>& sorted, int quarter) {
    // index-based lower quantile; quarter in {0,1,2,3,4}
    size_t n = sorted.size();
    size_t idx = (n - 1) * size_t(quarter) / 4;
    return sorted[idx];
}

}  // namespace

ExperimentResult run_experiment(int samples_per_regime, const SampleParams& p, uint64_t seed) {
    if (samples_per_regime < 1) fail("InvalidParameter", "need at least one sample");
    ExperimentResult res;
    for (int regime = 1; regime <= 4; ++regime) {
        RegimeSummary s;
        s.regime = regime;
        s.samples = samples_per_regime;
        for (int i = 0; i < samples_per_regime; ++i) {
            auto X = generate_incidence(regime, p, sample_seed(seed, regime, i));
            auto M = info_matrix(X);
            s.dets.push_back(det_exact(M));
            if (detect_alpha_beta(M)) ++s.achieved_alpha_beta_count;
        }
        auto sorted = s.dets;
        std::sort(sorted.begin(), sorted.end());
        s.min = sorted.front();
        s.q1 = sorted_quantile(sorted, 1);
        s.median = sorted_quantile(sorted, 2);
        s.q3 = sorted_quantile(sorted, 3);
        s.max = sorted.back();
        res.regimes.push_back(std::move(s));
    }
    return res;
}

std::string experiment_csv(const ExperimentResult& r) {
    std::ostringstream os;
    os << "regime,samples,min,q1,median,q3,max,achieved_alpha_beta_count\n";
    for (const auto& s : r.regimes)
        os << s.regime << ',' << s.samples << ',' << s.min << ',' << s.q1 << ',' << s.median
           << ',' << s.q3 << ',' << s.max << ',' << s.achieved_alpha_beta_count << "\n";
    return os.str();
}

IncidenceMatrix tripled_fano() {
    IncidenceMatrix X;
    X.regime = 4;
    const int base[3] = {0, 1, 3};
    for (int copy = 0; copy < 3; ++copy)
        for (int j = 0; j < 7; ++j) {
            std::vector<int> row(7, 0);
            for (int b : base) row[(b + j) % 7] = 1;
            X.rows.push_back(std::move(row));
        }
    return X;
}

}  // namespace dropout::optlab

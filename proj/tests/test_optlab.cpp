#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dropout/optlab.hpp"

using namespace dropout;
using optlab::IntMat;

namespace {

IntMat alpha_beta_matrix(int v, long long alpha, long long beta) {
    IntMat M(v, std::vector<long long>(v, beta));
    for (int i = 0; i < v; ++i) M[i][i] += alpha;
    return M;
}

long long ipowll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// naive cofactor-expansion oracle, n <= 6
long long det_cofactor(const IntMat& M) {
    int n = int(M.size());
    if (n == 1) return M[0][0];
    long long d = 0;
    for (int c = 0; c < n; ++c) {
        IntMat minor;
        for (int i = 1; i < n; ++i) {
            std::vector<long long> row;
            for (int j = 0; j < n; ++j)
                if (j != c) row.push_back(M[i][j]);
            minor.push_back(row);
        }
        long long term = M[0][c] * det_cofactor(minor);
        d += (c % 2 == 0) ? term : -term;
    }
    return d;
}

}  // namespace

TEST_CASE("the 7x7 matrix 6I+3J has determinant 1259712") {
    CHECK(optlab::det_exact(alpha_beta_matrix(7, 6, 3)) == 1259712);
}

TEST_CASE("identity determinants") {
    for (int n = 1; n <= 6; ++n) CHECK(optlab::det_exact(alpha_beta_matrix(n, 1, 0)) == 1);
}

TEST_CASE("alpha-beta determinant closed form") {
    CHECK(optlab::det_exact(alpha_beta_matrix(5, 2, 1)) == 112);
    for (int v = 1; v <= 8; ++v)
        for (long long a = -3; a <= 3; ++a)
            for (long long b = -3; b <= 3; ++b)
                CHECK(optlab::det_exact(alpha_beta_matrix(v, a, b)) ==
                      ipowll(a, v - 1) * (a + v * b));
}

TEST_CASE("exact elimination matches cofactor expansion on random matrices") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + int(rng() % 6);
        IntMat M(n, std::vector<long long>(n));
        for (auto& row : M)
            for (auto& x : row) x = (long long)(rng() % 11) - 5;
        CHECK(optlab::det_exact(M) == det_cofactor(M));
    }
}

TEST_CASE("alpha-beta pattern detection") {
    auto ab = optlab::detect_alpha_beta(alpha_beta_matrix(7, 6, 3));
    REQUIRE(ab.has_value());
    CHECK(ab->alpha == 6);
    CHECK(ab->beta == 3);

    auto id = optlab::detect_alpha_beta(alpha_beta_matrix(4, 1, 0));
    REQUIRE(id.has_value());
    CHECK(id->alpha == 1);
    CHECK(id->beta == 0);

    auto M = alpha_beta_matrix(4, 1, 1);
    M[0][1] = 5;
    CHECK_FALSE(optlab::detect_alpha_beta(M).has_value());
}

TEST_CASE("regime margins hold exactly") {
    optlab::SampleParams p;  // 21 x 7, 63 ones, column sum 9, row sum 3
    for (uint64_t seed = 0; seed < 20; ++seed) {
        auto x1 = optlab::generate_incidence(1, p, seed);
        long long total = 0;
        for (const auto& row : x1.rows)
            for (int b : row) total += b;
        CHECK(total == 63);

        auto x2 = optlab::generate_incidence(2, p, seed);
        for (int c = 0; c < 7; ++c) {
            int cs = 0;
            for (const auto& row : x2.rows) cs += row[c];
            CHECK(cs == 9);
        }

        auto x3 = optlab::generate_incidence(3, p, seed);
        for (const auto& row : x3.rows) {
            int rs = 0;
            for (int b : row) rs += b;
            CHECK(rs == 3);
        }

        auto x4 = optlab::generate_incidence(4, p, seed);
        for (const auto& row : x4.rows) {
            int rs = 0;
            for (int b : row) rs += b;
            CHECK(rs == 3);
        }
        for (int c = 0; c < 7; ++c) {
            int cs = 0;
            for (const auto& row : x4.rows) cs += row[c];
            CHECK(cs == 9);
        }
    }
}

TEST_CASE("saturated ones give the all-ones matrix in every regime") {
    optlab::SampleParams p;
    p.N = 4;
    p.v = 3;
    p.ones = 12;
    p.column_sum = 4;
    p.row_sum = 3;
    for (int regime = 1; regime <= 4; ++regime) {
        auto X = optlab::generate_incidence(regime, p, 99);
        for (const auto& row : X.rows)
            for (int b : row) CHECK(b == 1);
    }
}

TEST_CASE("inconsistent margins are rejected") {
    optlab::SampleParams p;
    p.row_sum = 4;  // 21*4 != 63
    CHECK_THROWS_WITH_AS(optlab::generate_incidence(4, p, 0),
                         doctest::Contains("InconsistentMargins"), Error);
}

TEST_CASE("generation is deterministic per seed") {
    optlab::SampleParams p;
    for (int regime = 1; regime <= 4; ++regime) {
        auto a = optlab::generate_incidence(regime, p, 7);
        auto b = optlab::generate_incidence(regime, p, 7);
        CHECK(a.rows == b.rows);
    }
}

TEST_CASE("tripled block-plane rows form a (9,3)-regular pairwise balanced design") {
    auto X = optlab::tripled_fano();
    CHECK(X.n() == 21);
    CHECK(X.v() == 7);
    auto rl = optlab::rl_design_check(X);
    REQUIRE(rl.has_value());
    CHECK(rl->r == 9);
    CHECK(rl->lambda == 3);
    auto M = optlab::info_matrix(X);
    auto ab = optlab::detect_alpha_beta(M);
    REQUIRE(ab.has_value());
    CHECK(ab->alpha == 6);
    CHECK(ab->beta == 3);
    CHECK(optlab::det_exact(M) == 1259712);
}

TEST_CASE("single all-ones row is a (1,1) design") {
    optlab::IncidenceMatrix X;
    X.rows = {{1, 1, 1, 1}};
    auto rl = optlab::rl_design_check(X);
    REQUIRE(rl.has_value());
    CHECK(rl->r == 1);
    CHECK(rl->lambda == 1);
}

TEST_CASE("pattern detection and the design check agree on random matrices") {
    optlab::SampleParams p;
    int designs = 0;
    for (uint64_t seed = 0; seed < 250; ++seed) {
        for (int regime = 1; regime <= 4; ++regime) {
            auto X = optlab::generate_incidence(regime, p, seed);
            auto rl = optlab::rl_design_check(X);
            auto ab = optlab::detect_alpha_beta(optlab::info_matrix(X));
            CHECK(rl.has_value() == ab.has_value());
            if (rl && ab) {
                ++designs;
                CHECK(ab->alpha == rl->r - rl->lambda);
                CHECK(ab->beta == rl->lambda);
            }
        }
    }
    (void)designs;  // regime-1 samples are almost surely not designs
}

TEST_CASE("experiment summaries are deterministic and well-formed") {
    optlab::SampleParams p;
    auto r1 = optlab::run_experiment(25, p, 5);
    auto r2 = optlab::run_experiment(25, p, 5);
    CHECK(optlab::experiment_csv(r1) == optlab::experiment_csv(r2));
    REQUIRE(r1.regimes.size() == 4);
    for (const auto& s : r1.regimes) {
        CHECK(s.samples == 25);
        CHECK(s.dets.size() == 25);
        CHECK(s.min <= s.q1);
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.max);
    }
    auto csv = optlab::experiment_csv(r1);
    CHECK(csv.rfind("regime,samples,min,q1,median,q3,max,achieved_alpha_beta_count\n", 0) == 0);
}

TEST_CASE("margin-constrained samples dominate unconstrained ones on average") {
    optlab::SampleParams p;
    auto r = optlab::run_experiment(60, p, 1);
    CHECK(r.regimes[3].median >= r.regimes[0].median);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <sstream>

#include "dropout/filters.hpp"
#include "fixtures.hpp"

using namespace dropout;
using filters::Mat;

namespace {

std::vector<std::vector<int>> translates(const std::vector<int>& base, int v) {
    std::vector<std::vector<int>> out;
    for (int s = 0; s < v; ++s) {
        std::vector<int> B;
        for (int x : base) B.push_back((x + s) % v);
        std::sort(B.begin(), B.end());
        out.push_back(B);
    }
    return out;
}

std::vector<Mat> family_of(const std::vector<int>& base, int v) {
    std::vector<Mat> fam;
    for (const auto& B : translates(base, v)) fam.push_back(filters::cyclic_matrix(B, v));
    return fam;
}

}  // namespace

TEST_CASE("difference multisets") {
    CHECK(filters::delta({0, 1, 3}, 7) == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK(filters::delta({0, 1}, 5) == std::vector<int>{1, 4});
    CHECK(filters::delta({0, 2, 4}, 6) == std::vector<int>{2, 2, 2, 4, 4, 4});
    CHECK_THROWS_WITH_AS(filters::delta({0}, 5), doctest::Contains("InvalidParameter"), Error);
}

TEST_CASE("the Z7 translate family has k=3, r=3 and exhaustively counted lambda=7") {
    auto res = filters::verify_difference_family(7, translates({0, 1, 3}, 7));
    REQUIRE(res.ok);
    CHECK(res.params.k == 3);
    CHECK(res.params.r == 3);
    CHECK(res.params.lambda == 7);
}

TEST_CASE("difference-family violations carry witnesses") {
    auto res = filters::verify_difference_family(4, {{0, 1}, {0, 2}});
    CHECK_FALSE(res.ok);
    CHECK(res.violation.find("(ii)") != std::string::npos);

    auto ragged = filters::verify_difference_family(4, {{0, 1}, {0, 1, 2}});
    CHECK_FALSE(ragged.ok);
    CHECK(ragged.violation.find("(i)") != std::string::npos);
}

TEST_CASE("a single full block is a difference family") {
    std::vector<int> full(6);
    std::iota(full.begin(), full.end(), 0);
    auto res = filters::verify_difference_family(6, {full});
    REQUIRE(res.ok);
    CHECK(res.params.k == 6);
    CHECK(res.params.r == 1);
    CHECK(res.params.lambda == 6);
}

TEST_CASE("cyclic development of {0,1,3} reproduces the reference matrix") {
    CHECK(filters::cyclic_matrix({0, 1, 3}, 7) == fixtures::h1_matrix());
}

TEST_CASE("degenerate cyclic matrices") {
    Mat I = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    CHECK(filters::cyclic_matrix({0}, 3) == I);
    CHECK(filters::cyclic_matrix({0, 1, 2}, 3) == Mat(3, std::vector<int>(3, 1)));
}

TEST_CASE("the Z7 filter family passes all three matrix conditions") {
    auto res = filters::verify_filter_family(family_of({0, 1, 3}, 7));
    REQUIRE(res.ok);
    CHECK(res.params.k == 3);
    CHECK(res.params.r == 3);
    CHECK(res.params.lambda == 7);  // Gram sums are 7J + 14I with kb = 21
}

TEST_CASE("a lone identity matrix fails the uniform-coverage condition") {
    // per-matrix line sums are fine (k=1) but the cell coverage is I, not rJ
    auto res = filters::verify_filter_family({filters::cyclic_matrix({0}, 3)});
    CHECK_FALSE(res.ok);
    CHECK(res.violation.find("(2)") != std::string::npos);

    // the full translate family of {0} is the (1,1,0) family
    auto full = filters::verify_filter_family(family_of({0}, 3));
    REQUIRE(full.ok);
    CHECK(full.params.k == 1);
    CHECK(full.params.r == 1);
    CHECK(full.params.lambda == 0);
}

TEST_CASE("a broken row sum is reported against condition (1)") {
    auto fam = family_of({0, 1, 3}, 7);
    fam[0][2][0] = 1 - fam[0][2][0];
    auto res = filters::verify_filter_family(fam);
    CHECK_FALSE(res.ok);
    CHECK(res.violation.find("(1)") != std::string::npos);
    CHECK(res.violation.find("matrix 0") != std::string::npos);
}

TEST_CASE("identity permutations leave the family unchanged") {
    auto fam = family_of({0, 1, 3}, 7);
    std::vector<int> id(7);
    std::iota(id.begin(), id.end(), 0);
    CHECK(filters::scramble(fam, id, id) == fam);
}

TEST_CASE("seeded scrambles preserve the parameters") {
    auto fam = family_of({0, 1, 3}, 7);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        auto s = filters::scramble_seeded(fam, seed);
        auto res = filters::verify_filter_family(s);
        REQUIRE(res.ok);
        CHECK(res.params.k == 3);
        CHECK(res.params.r == 3);
        CHECK(res.params.lambda == 7);
    }
    // deterministic per seed
    CHECK(filters::scramble_seeded(fam, 42) == filters::scramble_seeded(fam, 42));
}

TEST_CASE("scrambling a permutation matrix yields a permutation matrix") {
    auto s = filters::scramble_seeded({filters::cyclic_matrix({0}, 4)}, 7);
    REQUIRE(s.size() == 1);
    for (int i = 0; i < 4; ++i) {
        int rs = 0, cs = 0;
        for (int j = 0; j < 4; ++j) {
            rs += s[0][i][j];
            cs += s[0][j][i];
        }
        CHECK(rs == 1);
        CHECK(cs == 1);
    }
}

TEST_CASE("difference-family search finds the reference base block") {
    auto fams = filters::search_difference_families(7, 3, 7);
    bool found = false;
    auto want = translates({0, 1, 3}, 7);
    std::sort(want.begin(), want.end());
    for (auto f : fams) {
        std::sort(f.begin(), f.end());
        if (f == want) found = true;
    }
    CHECK(found);

    // no 2-subset development over Z_5 can cover the 4 nonzero residues
    // uniformly (10 differences split over residues {1,4} only)
    CHECK(filters::search_difference_families(5, 2, 5).empty());

    auto triples = filters::search_difference_families(4, 3, 4);
    REQUIRE(!triples.empty());
    auto r3 = filters::verify_difference_family(4, triples.front());
    CHECK(r3.params.r == 3);

    CHECK_THROWS_WITH_AS(filters::search_difference_families(16, 3, 3),
                         doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("family conditions (i)-(iii) match matrix conditions (1)-(3)") {
    for (int v = 3; v <= 9; ++v) {
        for (int k = 2; k <= std::min(4, v); ++k) {
            // every base block containing 0
            std::vector<int> idx(k - 1);
            std::iota(idx.begin(), idx.end(), 1);
            while (true) {
                std::vector<int> base{0};
                base.insert(base.end(), idx.begin(), idx.end());
                auto fam_res = filters::verify_difference_family(v, translates(base, v));
                auto mat_res = filters::verify_filter_family(family_of(base, v));
                CHECK(fam_res.ok == mat_res.ok);
                if (fam_res.ok && mat_res.ok) {
                    CHECK(fam_res.params.k == mat_res.params.k);
                    CHECK(fam_res.params.r == mat_res.params.r);
                    CHECK(fam_res.params.lambda == mat_res.params.lambda);
                }
                int i = k - 2;
                while (i >= 0 && idx[i] == v - (k - 1) + i) --i;
                if (i < 0) break;
                ++idx[i];
                for (int j = i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

TEST_CASE("filter file format round-trips") {
    auto fam = family_of({0, 1, 3}, 7);
    auto text = filters::write_dfilter(fam, 7);
    std::istringstream in(text);
    CHECK(filters::read_dfilter(in) == fam);

    std::istringstream bad("DFILTER 2\n");
    CHECK_THROWS_WITH_AS(filters::read_dfilter(bad), doctest::Contains("line 1"), Error);
}

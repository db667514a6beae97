#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "dropout/design.hpp"
#include "dropout/design_io.hpp"
#include "fixtures.hpp"

using namespace dropout;
using design::Design;
using design::TypeVector;

TEST_CASE("golden two-layer design verifies at (1,1) with lambda 1") {
    auto D = fixtures::udd_6_2_two_layers();
    auto prof = design::verify(D, {1, 1});
    REQUIRE(prof.ok);
    CHECK_FALSE(prof.degenerate);
    CHECK(prof.lambda(0, {1, 1}) == 1);
    CHECK(prof.windows.size() == 1);
}

TEST_CASE("three-layer designs verify at (1,1) in every window") {
    for (auto D : {fixtures::three_layer_design(), fixtures::udd_6_2_extended()}) {
        auto prof = design::verify(D, {1, 1});
        REQUIRE(prof.ok);
        CHECK(prof.windows.size() == 2);
        CHECK(prof.lambda(0, {1, 1}) == 1);
        CHECK(prof.lambda(1, {1, 1}) == 1);
    }
}

TEST_CASE("single block on 1-point layers") {
    auto D = fixtures::make({1, 1}, {{{0}, {0}}});
    auto prof = design::verify(D, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {1, 1}) == 1);
}

TEST_CASE("variable-size 12-block design is constant at (2,2) but not regular") {
    auto D = fixtures::vsbd_12_blocks();
    auto prof = design::verify(D, {2, 2});
    CHECK_FALSE(prof.ok);
    REQUIRE(prof.counterexample.has_value());
    CHECK_FALSE(prof.counterexample->describe().empty());

    auto lam = design::constant_subtype(D, {2, 2});
    REQUIRE(lam.has_value());
    CHECK((*lam)[0] == 1);

    // the reference witness: sub-type (1,0) counts differ between points 3 and 0
    auto sub = design::constant_subtype(D, {1, 0});
    CHECK_FALSE(sub.has_value());
}

TEST_CASE("augmented variable-size design is regular of type (2,2)") {
    auto D = fixtures::vsbd_12_blocks();
    auto extra = fixtures::vsbd_augmentation();
    D.blocks.insert(D.blocks.end(), extra.begin(), extra.end());
    auto prof = design::verify(D, {2, 2});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {2, 2}) == 1);
}

TEST_CASE("verify budget is enforced") {
    auto D = fixtures::udd_6_2_two_layers();
    CHECK_THROWS_WITH_AS(design::verify(D, {1, 1}, false, 1),
                         doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("monotone regularity: verified designs verify at smaller types") {
    auto D = fixtures::vsbd_12_blocks();
    auto extra = fixtures::vsbd_augmentation();
    D.blocks.insert(D.blocks.end(), extra.begin(), extra.end());
    for (TypeVector g : {TypeVector{1, 1}, TypeVector{2, 1}, TypeVector{1, 2}})
        CHECK(design::verify(D, g).ok);
}

TEST_CASE("counting identity holds on the golden designs") {
    auto D = fixtures::udd_6_2_two_layers();
    auto prof = design::verify(D, {1, 1});
    auto id = design::concurrence_identity_check(D, {1, 1}, prof);
    CHECK(id.ok);
    REQUIRE(id.lhs.size() == 1);
    CHECK(id.lhs[0] == 36);  // 1 * C(6,1)^2
    CHECK(id.rhs[0] == 36);  // 9 * C(2,1)^2
    REQUIRE(id.property1.has_value());
    CHECK(id.property1->first == 9 * 2 * 2);
    CHECK(id.property1->second == 1 * 6 * 6);
}

TEST_CASE("counting identity on a degenerate single block") {
    auto D = fixtures::make({1, 1}, {{{0}, {0}}});
    auto prof = design::verify(D, {1, 1});
    auto id = design::concurrence_identity_check(D, {1, 1}, prof);
    CHECK(id.ok);
    CHECK(id.lhs[0] == 1);
    CHECK(id.rhs[0] == 1);
}

TEST_CASE("restriction to the first two layers recovers the two-layer design") {
    auto D = design::restrict(fixtures::three_layer_design(), {0, 1});
    CHECK(D.same_design(fixtures::udd_6_2_two_layers()));
}

TEST_CASE("restriction to all layers is the identity") {
    auto D = fixtures::three_layer_design();
    CHECK(design::restrict(D, {0, 1, 2}).same_design(D));
}

TEST_CASE("restriction to the last two layers still verifies") {
    auto D = design::restrict(fixtures::three_layer_design(), {1, 2});
    auto prof = design::verify(D, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {1, 1}) == 1);
}

TEST_CASE("restricted block multisets") {
    auto D5 = fixtures::udd_6_2_two_layers();
    auto got = design::restricted_set(D5, {{0, {0}}}, 1);
    std::sort(got.begin(), got.end());
    std::vector<std::vector<int>> want = {{0, 3}, {1, 5}, {2, 4}};
    CHECK(got == want);

    auto all = design::restricted_set(D5, {}, 1);
    CHECK(all.size() == 9);

    auto D4 = fixtures::three_layer_design();
    auto third = design::restricted_set(D4, {{0, {0}}, {1, {0}}}, 2);
    CHECK(third == std::vector<std::vector<int>>{{0, 3}});

    // regular 1-wise balance of the restricted set
    auto rt = design::is_regular_twise(got, 6, 1);
    CHECK(rt.ok);
    CHECK(rt.lambdas == std::vector<long long>{1});
}

TEST_CASE("regular t-wise balance") {
    std::vector<std::vector<int>> fano = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6},
                                          {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
    auto rt = design::is_regular_twise(fano, 7, 2);
    CHECK(rt.ok);
    CHECK(rt.lambdas == std::vector<long long>{3, 1});

    auto dup = design::is_regular_twise({{0, 1}, {0, 1}}, 2, 2);
    CHECK(dup.ok);
    CHECK(dup.lambdas == std::vector<long long>{2, 2});

    CHECK_FALSE(design::is_regular_twise({{0, 1}, {0, 2}}, 3, 1).ok);
}

TEST_CASE("properness") {
    CHECK(design::is_proper(fixtures::three_layer_design()).proper);
    auto bad = fixtures::make({2, 2}, {{{0, 1}, {0}}});
    auto rep = design::is_proper(bad);
    CHECK_FALSE(rep.proper);
    CHECK(rep.block == 0);
    CHECK(rep.layer == 0);
}

TEST_CASE("complement verifies at the same type with the complementary lambda") {
    auto D = fixtures::three_layer_design();
    auto C = design::complement(D);
    auto prof = design::verify(C, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {1, 1}) == 4);  // b - r_x - r_y + lambda = 9-3-3+1
    CHECK(design::complement(C).same_design(D));

    auto bad = fixtures::make({2, 2}, {{{0, 1}, {0}}});
    CHECK_THROWS_WITH_AS(design::complement(bad), doctest::Contains("NotProper"), Error);
}

TEST_CASE("point deletion reproduces the reference deleted design") {
    auto D = fixtures::three_layer_design();
    auto E = design::delete_points(D, {{0, 0}, {1, 3}});
    CHECK(E.same_design(fixtures::three_layer_deleted()));
    auto prof = design::verify(E, {1, 1});
    CHECK(prof.ok);
}

TEST_CASE("deleting an entire sub-block is rejected") {
    auto D = fixtures::three_layer_design();
    CHECK_THROWS_WITH_AS(design::delete_points(D, {{1, 0}, {1, 3}}),
                         doctest::Contains("SubBlockSwallowed"), Error);
}

TEST_CASE("deleting nothing is the identity") {
    auto D = fixtures::three_layer_design();
    CHECK(design::delete_points(D, {}).same_design(D));
}

TEST_CASE("deletion preserves surviving concurrence counts") {
    auto D = fixtures::three_layer_design();
    auto E = design::delete_points(D, {{0, 0}, {1, 3}});
    auto prof = design::verify(E, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {1, 1}) == 1);
    CHECK(prof.lambda(1, {1, 1}) == 1);
}

TEST_CASE("cyclic extension reproduces the reference three-layer table") {
    auto D = fixtures::udd_6_2_two_layers();
    auto E = design::extend(D, {1, 1}, 3);
    CHECK(E.same_design(fixtures::udd_6_2_extended()));
}

TEST_CASE("extension to n = t is the identity") {
    auto D = fixtures::udd_6_2_two_layers();
    CHECK(design::extend(D, {1, 1}, 2).same_design(D));
}

TEST_CASE("extension to five layers verifies in all windows") {
    auto D = design::extend(fixtures::udd_6_2_two_layers(), {1, 1}, 5);
    auto prof = design::verify(D, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.windows.size() == 4);
    for (int w = 0; w < 4; ++w) CHECK(prof.lambda(w, {1, 1}) == 1);
}

TEST_CASE("direct product reproduces the reference trivial product") {
    auto B1 = fixtures::make({9}, {{{0, 3, 6}}, {{1, 5, 7}}, {{2, 4, 8}}});
    auto B2 = fixtures::make({6}, {{{0, 3}}, {{1, 5}}, {{2, 4}}});
    auto P = design::direct_product({B1, B2});
    CHECK(P.same_design(fixtures::trivial_product()));
    auto prof = design::verify(P, {1, 1});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {1, 1}) == 1);
}

TEST_CASE("product with a single-block component appends a constant sub-block") {
    auto D = fixtures::udd_6_2_two_layers();
    auto single = fixtures::make({3}, {{{0, 1}}});
    auto P = design::direct_product({D, single});
    CHECK(P.n_blocks() == 9);
    for (const auto& B : P.blocks) CHECK(B.sub.back() == std::vector<int>{0, 1});
}

TEST_CASE("product of regular t-wise balanced components verifies at (2,2)") {
    auto B1 = fixtures::make(
        {4}, {{{0, 1, 2}}, {{0, 3}}, {{2, 3}}, {{1, 3}}, {{0}}, {{1}}, {{2}}});
    auto B2 = fixtures::make({3}, {{{0, 1}}, {{0, 2}}, {{1, 2}}});
    auto P = design::direct_product({B1, B2});
    CHECK(P.n_blocks() == 21);
    auto prof = design::verify(P, {2, 2});
    REQUIRE(prof.ok);
    CHECK(prof.lambda(0, {2, 2}) == 1);
}

TEST_CASE("uniformity report") {
    auto D = fixtures::udd_6_2_two_layers();
    auto prof = design::verify(D, {1, 1});
    TypeVector t{1, 1};
    auto rep = design::uniformity_report(D, &prof, &t);
    CHECK(rep.uniform);
    CHECK(rep.v == 6);
    CHECK(rep.k == 2);
    REQUIRE(rep.lambda.has_value());
    CHECK(*rep.lambda == 1);
    CHECK(rep.lambda_formula == rep.lambda);

    auto rep2 = design::uniformity_report(fixtures::oa_gf3_relabeled());
    CHECK_FALSE(rep2.uniform);

    auto rep3 = design::uniformity_report(fixtures::make({1, 1}, {{{0}, {0}}}));
    CHECK(rep3.uniform);
    CHECK(rep3.v == 1);
    CHECK(rep3.k == 1);
}

TEST_CASE("validation rejects malformed designs") {
    Design D;
    D.layer_sizes = {2, 2};
    design::SuperBlock B;
    B.sub = {{0}, {}};
    D.blocks.push_back(B);
    CHECK_THROWS_WITH_AS(D.validate(), doctest::Contains("InvalidDesign"), Error);
    D.blocks[0].sub = {{1, 0}, {0}};
    CHECK_THROWS_WITH_AS(D.validate(), doctest::Contains("InvalidDesign"), Error);
    D.blocks[0].sub = {{0, 2}, {0}};
    CHECK_THROWS_WITH_AS(D.validate(), doctest::Contains("InvalidDesign"), Error);
}

TEST_CASE("design file format round-trips") {
    for (auto D : {fixtures::udd_6_2_two_layers(), fixtures::three_layer_design(),
                   fixtures::oa_gf3_relabeled(), fixtures::three_layer_deleted()}) {
        auto text = design::write_ddesign(D);
        auto back = design::read_ddesign_string(text);
        CHECK(back.layer_sizes == D.layer_sizes);
        CHECK(back.blocks == D.blocks);
        CHECK(design::write_ddesign(back) == text);
    }
}

TEST_CASE("mask format round-trips") {
    for (auto D : {fixtures::udd_6_2_two_layers(), fixtures::three_layer_design()}) {
        std::istringstream in(design::write_dmask(D));
        auto back = design::read_dmask(in);
        CHECK(back.layer_sizes == D.layer_sizes);
        CHECK(back.blocks == D.blocks);
    }
}

TEST_CASE("mask lines encode keep-bits") {
    auto text = design::write_dmask(fixtures::udd_6_2_two_layers());
    std::istringstream in(text);
    std::string line;
    for (int i = 0; i < 5; ++i) std::getline(in, line);
    CHECK(line == "100100|100100");  // first block {0,3 | 0,3}
}

TEST_CASE("parse errors name the offending line") {
    CHECK_THROWS_WITH_AS(design::read_ddesign_string("DDESIGN 2\n"),
                         doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(
        design::read_ddesign_string("DDESIGN 1\nlayers 2\nsizes 2 2\nblocks 1\n0 | x\n"),
        doctest::Contains("line 5"), Error);
}

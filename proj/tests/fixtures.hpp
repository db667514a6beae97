#pragma once

// Hand-entered golden fixtures used across the test suite: small reference
// block designs over 6-point layers, the GF(3) orthogonal-array tables, and
// the cyclic 7x7 filter matrix.

#include <vector>

#include "dropout/design.hpp"

namespace fixtures {

using dropout::design::Design;
using dropout::design::SuperBlock;

inline Design make(std::vector<int> sizes,
                   std::vector<std::vector<std::vector<int>>> blocks) {
    Design D;
    D.layer_sizes = std::move(sizes);
    for (auto& b : blocks) {
        SuperBlock B;
        B.sub = std::move(b);
        D.blocks.push_back(std::move(B));
    }
    D.validate();
    return D;
}

// (6,2,1;2)-UDD on two 6-point layers.
inline Design udd_6_2_two_layers() {
    return make({6, 6}, {
        {{0, 3}, {0, 3}}, {{0, 4}, {1, 5}}, {{0, 5}, {2, 4}},
        {{1, 3}, {1, 4}}, {{1, 4}, {2, 3}}, {{1, 5}, {0, 5}},
        {{2, 3}, {2, 5}}, {{2, 4}, {0, 4}}, {{2, 5}, {1, 3}},
    });
}

// Its reference cyclic extension to three layers (third layer = first).
inline Design udd_6_2_extended() {
    return make({6, 6, 6}, {
        {{0, 3}, {0, 3}, {0, 3}}, {{0, 4}, {1, 5}, {0, 4}}, {{0, 5}, {2, 4}, {0, 5}},
        {{1, 3}, {1, 4}, {1, 3}}, {{1, 4}, {2, 3}, {1, 4}}, {{1, 5}, {0, 5}, {1, 5}},
        {{2, 3}, {2, 5}, {2, 3}}, {{2, 4}, {0, 4}, {2, 4}}, {{2, 5}, {1, 3}, {2, 5}},
    });
}

// Independent three-layer type-(1,1) design sharing the first two layers
// with udd_6_2_two_layers.
inline Design three_layer_design() {
    return make({6, 6, 6}, {
        {{0, 3}, {0, 3}, {0, 3}}, {{0, 4}, {1, 5}, {0, 5}}, {{0, 5}, {2, 4}, {0, 4}},
        {{1, 3}, {1, 4}, {2, 3}}, {{1, 4}, {2, 3}, {2, 5}}, {{1, 5}, {0, 5}, {2, 4}},
        {{2, 3}, {2, 5}, {1, 3}}, {{2, 4}, {0, 4}, {1, 5}}, {{2, 5}, {1, 3}, {1, 4}},
    });
}

// three_layer_design with point 0 of layer 1 and point 3 of layer 2 deleted,
// surviving points relabeled compactly (layer 1: x -> x-1; layer 2: 4 -> 3,
// 5 -> 4).
inline Design three_layer_deleted() {
    return make({5, 5, 6}, {
        {{2}, {0}, {0, 3}},       {{3}, {1, 4}, {0, 5}},    {{4}, {2, 3}, {0, 4}},
        {{0, 2}, {1, 3}, {2, 3}}, {{0, 3}, {2}, {2, 5}},    {{0, 4}, {0, 4}, {2, 4}},
        {{1, 2}, {2, 4}, {1, 3}}, {{1, 3}, {0, 3}, {1, 5}}, {{1, 4}, {1}, {1, 4}},
    });
}

// Trivial direct product {0,3,6},{1,5,7},{2,4,8} x {0,3},{1,5},{2,4}.
inline Design trivial_product() {
    return make({9, 6}, {
        {{0, 3, 6}, {0, 3}}, {{0, 3, 6}, {1, 5}}, {{0, 3, 6}, {2, 4}},
        {{1, 5, 7}, {0, 3}}, {{1, 5, 7}, {1, 5}}, {{1, 5, 7}, {2, 4}},
        {{2, 4, 8}, {0, 3}}, {{2, 4, 8}, {1, 5}}, {{2, 4, 8}, {2, 4}},
    });
}

// Variable-sub-block-size design over layers of sizes 4 and 3: constant at
// the exact type (2,2) but not regular (point 3 vs point 0 of layer 1
// appear a different number of times).
inline Design vsbd_12_blocks() {
    return make({4, 3}, {
        {{0, 1, 2}, {0, 1}}, {{0, 1, 2}, {0, 2}}, {{0, 1, 2}, {1, 2}},
        {{0, 3}, {0, 1}},    {{0, 3}, {0, 2}},    {{0, 3}, {1, 2}},
        {{2, 3}, {0, 1}},    {{2, 3}, {0, 2}},    {{2, 3}, {1, 2}},
        {{1, 3}, {0, 1}},    {{1, 3}, {0, 2}},    {{1, 3}, {1, 2}},
    });
}

// The nine singleton-augmentation blocks that make vsbd_12_blocks regular.
inline std::vector<SuperBlock> vsbd_augmentation() {
    Design D = make({4, 3}, {
        {{0}, {0, 1}}, {{0}, {0, 2}}, {{0}, {1, 2}},
        {{1}, {0, 1}}, {{1}, {0, 2}}, {{1}, {1, 2}},
        {{2}, {0, 1}}, {{2}, {0, 2}}, {{2}, {1, 2}},
    });
    return D.blocks;
}

// Orthogonal-array tables for G = [[1,0,1],[1,2,2]] over GF(3),
// partition (2,1): raw rows and the relabeled rows, in reference order
// (= lexicographic message order).
inline std::vector<std::vector<int>> oa_gf3_raw() {
    return {{0, 0, 0}, {1, 2, 2}, {2, 1, 1}, {1, 0, 1}, {2, 2, 0},
            {0, 1, 2}, {2, 0, 2}, {0, 2, 1}, {1, 1, 0}};
}

inline Design oa_gf3_relabeled() {
    return make({6, 3}, {
        {{0, 3}, {0}}, {{1, 5}, {2}}, {{2, 4}, {1}},
        {{1, 3}, {1}}, {{2, 5}, {0}}, {{0, 4}, {2}},
        {{2, 3}, {2}}, {{0, 5}, {1}}, {{1, 4}, {0}},
    });
}

// Cyclic development matrix of {0,1,3} over Z_7, reference bit-for-bit.
inline std::vector<std::vector<int>> h1_matrix() {
    return {
        {1, 1, 0, 1, 0, 0, 0},
        {0, 1, 1, 0, 1, 0, 0},
        {0, 0, 1, 1, 0, 1, 0},
        {0, 0, 0, 1, 1, 0, 1},
        {1, 0, 0, 0, 1, 1, 0},
        {0, 1, 0, 0, 0, 1, 1},
        {1, 0, 1, 0, 0, 0, 1},
    };
}

}  // namespace fixtures

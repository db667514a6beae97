#pragma once

#include <vector>

#include "dropout/design.hpp"
#include "dropout/geometry.hpp"

namespace dropout::geodesigns {

// Closed-form parameter predictions attached to each construction.
struct Predicted {
    long long v = 0, k = 0, lambda = 0, n = 0, b = 0;
    long long k_alt = -1;  // second sub-block size, spread design only
};

struct GeoDesign {
    design::Design design;
    Predicted predicted;
    design::TypeVector declared_type;
};

// 2-design on the members of a parallel class of t-flats in AG(d,q),
// blocks = hyperplanes that are unions of class members.
struct ParallelClass2Design {
    int v = 0;  // q^{d-t} class members as points
    std::vector<std::vector<int>> blocks;
    long long k = 0, lambda = 0;
};
ParallelClass2Design ag_parallel_class_design(int d, int q, int t);

// Layers = parallel t-flats; blocks = hyperplanes containing no class
// member. Types (2,1) and (1,2).
GeoDesign ag_hyperplane_design(int d, int q, int t);

// Layers = punctured hyperplanes through a (d-2)-flat; blocks = lines.
GeoDesign pg_pencil_lines_design(int d, int q);

// Same layers; blocks = planes meeting the spine at one point.
GeoDesign pg_pencil_planes_design(int d, int q);

// Layers = spread members; blocks = all hyperplanes. Non-proper, type (2,2).
GeoDesign pg_spread_design(int d, int q, int t);

}  // namespace dropout::geodesigns

#include "dropout/geo_designs.hpp"

#include <algorithm>
#include <map>

namespace dropout::geodesigns {

namespace {

using geom::Flat;
using geom::Kind;

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool contains_all(const std::vector<int>& big, const std::vector<int>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// layer-local labels: position of each point inside the layer's point list
std::vector<int> localize(const std::vector<int>& layer_points, const std::vector<int>& pts) {
    std::vector<int> out;
    for (int p : pts) {
        auto it = std::lower_bound(layer_points.begin(), layer_points.end(), p);
        out.push_back(int(it - layer_points.begin()));
    }
    return out;
}

}  // namespace

ParallelClass2Design ag_parallel_class_design(int d, int q, int t) {
    if (d < 3 || t < 2 || t > d - 1) fail("InvalidParameter", "need d >= 3 and 2 <= t <= d-1");
    gf::Field F(q);
    auto tflats = geom::enumerate_flats(Kind::Affine, d, F, t);
    auto pc = geom::parallel_class_of(d, F, tflats.front());

    ParallelClass2Design out;
    out.v = int(pc.members.size());
    out.k = ipow(q, d - t - 1);
    out.lambda = geom::gaussian_coefficient(d - t - 1, 1, q);

    for (const auto& H : geom::enumerate_flats(Kind::Affine, d, F, d - 1)) {
        std::vector<int> inside;
        for (int i = 0; i < out.v; ++i)
            if (contains_all(H.points, pc.members[i].points)) inside.push_back(i);
        if (int(inside.size()) == out.k) out.blocks.push_back(std::move(inside));
    }
    return out;
}

GeoDesign ag_hyperplane_design(int d, int q, int t) {
    if (d < 3 || t < 2 || t > d - 1) fail("InvalidParameter", "need d >= 3 and 2 <= t <= d-1");
    gf::Field F(q);
    auto tflats = geom::enumerate_flats(Kind::Affine, d, F, t);
    auto pc = geom::parallel_class_of(d, F, tflats.front());

    GeoDesign g;
    g.declared_type = {2, 1};
    g.predicted.n = ipow(q, d - t);
    g.predicted.v = ipow(q, t);
    g.predicted.k = ipow(q, t - 1);
    g.predicted.b = q * (ipow(q, d) - ipow(q, d - t)) / (q - 1);
    g.predicted.lambda = (ipow(q, d - 2) - ipow(q, d - t - 1)) / (q - 1);

    for (const auto& m : pc.members) g.design.layer_sizes.push_back(int(m.points.size()));
    for (const auto& H : geom::enumerate_flats(Kind::Affine, d, F, d - 1)) {
        bool swallows = false;
        for (const auto& m : pc.members)
            if (contains_all(H.points, m.points)) {
                swallows = true;
                break;
            }
        if (swallows) continue;
        design::SuperBlock B;
        for (const auto& m : pc.members)
            B.sub.push_back(localize(m.points, intersect(H.points, m.points)));
        g.design.blocks.push_back(std::move(B));
    }
    g.design.validate();
    return g;
}

namespace {

// The pencil frame used by both PG constructions: the lexicographically
// first (d-2)-flat T and the q+1 punctured hyperplanes through it.
struct Pencil {
    Flat T;
    std::vector<std::vector<int>> layers;  // H_i^* = H_i \ T, sorted global labels
    std::vector<Flat> hyperplanes;
};

Pencil make_pencil(int d, const gf::Field& F) {
    Pencil P;
    auto spines = geom::enumerate_flats(Kind::Projective, d, F, d - 2);
    P.T = spines.front();
    P.hyperplanes = geom::hyperplanes_through_flat(d, F, P.T);
    for (const auto& H : P.hyperplanes) {
        std::vector<int> star;
        std::set_difference(H.points.begin(), H.points.end(), P.T.points.begin(),
                            P.T.points.end(), std::back_inserter(star));
        P.layers.push_back(std::move(star));
    }
    return P;
}

}  // namespace

GeoDesign pg_pencil_lines_design(int d, int q) {
    if (d < 2) fail("InvalidParameter", "need d >= 2");
    gf::Field F(q);
    Pencil P = make_pencil(d, F);

    GeoDesign g;
    g.declared_type = {1, 1};
    g.predicted.n = q + 1;
    g.predicted.v = ipow(q, d - 1);
    g.predicted.k = 1;
    g.predicted.lambda = 1;
    g.predicted.b = ipow(q, 2 * (d - 1));

    for (const auto& layer : P.layers) g.design.layer_sizes.push_back(int(layer.size()));
    for (const auto& L : geom::enumerate_flats(Kind::Projective, d, F, 1)) {
        if (!intersect(L.points, P.T.points).empty()) continue;
        bool inside = false;
        for (const auto& H : P.hyperplanes)
            if (contains_all(H.points, L.points)) {
                inside = true;
                break;
            }
        if (inside) continue;
        design::SuperBlock B;
        for (const auto& layer : P.layers) B.sub.push_back(localize(layer, intersect(L.points, layer)));
        g.design.blocks.push_back(std::move(B));
    }
    g.design.validate();
    return g;
}

GeoDesign pg_pencil_planes_design(int d, int q) {
    if (d < 3) fail("InvalidParameter", "need d >= 3");
    gf::Field F(q);
    Pencil P = make_pencil(d, F);

    GeoDesign g;
    g.declared_type = {2, 1};
    g.predicted.n = q + 1;
    g.predicted.v = ipow(q, d - 1);
    g.predicted.k = q;
    g.predicted.lambda = 1;
    g.predicted.b = ipow(q, 2 * d - 4) * (ipow(q, d - 1) - 1) / (q - 1);

    for (const auto& layer : P.layers) g.design.layer_sizes.push_back(int(layer.size()));
    for (const auto& pl : geom::enumerate_flats(Kind::Projective, d, F, 2)) {
        if (int(intersect(pl.points, P.T.points).size()) != 1) continue;
        bool inside = false;
        for (const auto& H : P.hyperplanes)
            if (contains_all(H.points, pl.points)) {
                inside = true;
                break;
            }
        if (inside) continue;
        design::SuperBlock B;
        for (const auto& layer : P.layers)
            B.sub.push_back(localize(layer, intersect(pl.points, layer)));
        g.design.blocks.push_back(std::move(B));
    }
    g.design.validate();
    return g;
}

GeoDesign pg_spread_design(int d, int q, int t) {
    gf::Field F(q);
    auto spread = geom::find_spread(d, F, t);

    GeoDesign g;
    g.declared_type = {2, 2};
    g.predicted.n = (ipow(q, d + 1) - 1) / (ipow(q, t + 1) - 1);
    g.predicted.v = geom::gaussian_coefficient(t + 1, 1, q);
    g.predicted.k = geom::gaussian_coefficient(t, 1, q);
    g.predicted.k_alt = g.predicted.v;
    g.predicted.b = geom::gaussian_coefficient(d + 1, 1, q);
    g.predicted.lambda = geom::gaussian_coefficient(d - 3, 1, q);

    for (const auto& m : spread.members) g.design.layer_sizes.push_back(int(m.points.size()));
    for (const auto& H : geom::enumerate_flats(Kind::Projective, d, F, d - 1)) {
        design::SuperBlock B;
        for (const auto& m : spread.members)
            B.sub.push_back(localize(m.points, intersect(H.points, m.points)));
        g.design.blocks.push_back(std::move(B));
    }
    g.design.validate();
    return g;
}

}  // namespace dropout::geodesigns

#pragma once

#include <cstdint>
#include <vector>

#include "dropout/gf.hpp"

namespace dropout::geom {

enum class Kind { Projective, Affine };

// A point is identified by its label = index into the deterministic
// enumeration order of enumerate_points(). Vectors are over GF(q):
// length d+1 (projective, normalized so the first nonzero coordinate is 1)
// or length d (affine).
struct PointSet {
    Kind kind;
    int d;
    std::vector<std::vector<gf::Elem>> vectors;  // label -> vector

    int label_of(const std::vector<gf::Elem>& v) const;
    int size() const { return int(vectors.size()); }
};

struct Flat {
    Kind kind;
    int t;                                   // flat dimension
    std::vector<std::vector<gf::Elem>> basis;  // independent vectors
    std::vector<gf::Elem> shift;             // affine only; empty for projective
    std::vector<int> points;                 // sorted point labels
};

struct ParallelClass {
    int t;
    std::vector<Flat> members;  // pairwise disjoint, covering AG(d,q)
};

struct Spread {
    int t;
    std::vector<Flat> members;  // t-flats partitioning PG(d,q)
};

// Gaussian coefficient [d choose t]_q.
long long gaussian_coefficient(int d, int t, int q);

PointSet enumerate_points(Kind kind, int d, const gf::Field& F);

// Projective: 0 <= t <= d-1. Affine: 0 <= t <= d. Deterministic order.
std::vector<Flat> enumerate_flats(Kind kind, int d, const gf::Field& F, int t);

// All hyperplanes of PG(d,q) containing the projective flat T.
std::vector<Flat> hyperplanes_through_flat(int d, const gf::Field& F, const Flat& T);

// All q^{d-t} translates of an affine t-flat.
ParallelClass parallel_class_of(int d, const gf::Field& F, const Flat& T);

// Spread of t-flats in PG(d,q); requires (t+1) | (d+1).
Spread find_spread(int d, const gf::Field& F, int t);

// Cap (no 3 collinear) of size size_goal in PG(d,q), d in {2,3}.
// size_goal <= 0 picks the known maximal size (q+1 / q+2 / q^2+1).
std::vector<int> find_cap(int d, const gf::Field& F, int size_goal = 0);

// True iff the three projective points (labels into pts) are collinear.
bool collinear(const gf::Field& F, const PointSet& pts, int a, int b, int c);

}  // namespace dropout::geom

#include "dropout/oa.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "dropout/geometry.hpp"

namespace dropout::oa {

namespace {

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// invoke fn on every size-k index combination out of [0, n)
void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    if (k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// all cross-selections: d_i column indices from partition block i
void for_each_cross_selection(const std::vector<int>& partition, const std::vector<int>& type,
                              const std::function<void(const std::vector<int>&)>& fn) {
    int t = int(partition.size());
    std::vector<int> offsets(t, 0);
    for (int i = 1; i < t; ++i) offsets[i] = offsets[i - 1] + partition[i - 1];

    std::vector<std::vector<std::vector<int>>> per_block(t);
    for (int i = 0; i < t; ++i)
        for_each_combination(partition[i], type[i], [&](const std::vector<int>& c) {
            std::vector<int> cols;
            for (int j : c) cols.push_back(offsets[i] + j);
            per_block[i].push_back(cols);
        });

    std::vector<int> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == t) {
            fn(cur);
            return;
        }
        for (const auto& cols : per_block[i]) {
            size_t mark = cur.size();
            cur.insert(cur.end(), cols.begin(), cols.end());
            rec(i + 1);
            cur.resize(mark);
        }
    };
    rec(0);
}

}  // namespace

GeneratorMatrix make_generator(gf::Field field, gf::Matrix columns, std::vector<int> partition,
                               std::vector<int> type) {
    if (partition.size() != type.size())
        fail("InvalidGenerator", "partition and type lengths differ");
    if (partition.empty()) fail("InvalidGenerator", "empty partition");
    int m = 0;
    for (size_t i = 0; i < partition.size(); ++i) {
        if (partition[i] < 1 || type[i] < 1) fail("InvalidGenerator", "entries must be positive");
        if (type[i] > partition[i])
            fail("InvalidGenerator", "type entry exceeds its partition size");
        m += partition[i];
    }
    if (columns.empty() || int(columns[0].size()) != m)
        fail("InvalidGenerator", "column count does not match partition");

    GeneratorMatrix G{std::move(field), std::move(columns), std::move(partition), std::move(type)};

    // condition (1): within G_i, every d_i columns independent
    int t = int(G.partition.size());
    int off = 0;
    for (int i = 0; i < t; ++i) {
        bool ok = true;
        for_each_combination(G.partition[i], G.type[i], [&](const std::vector<int>& c) {
            std::vector<int> cols;
            for (int j : c) cols.push_back(off + j);
            if (!gf::columns_independent(G.field, G.columns, cols)) ok = false;
        });
        if (!ok)
            fail("InvalidGenerator",
                 "dependent d_i-column set inside sub-matrix " + std::to_string(i + 1));
        off += G.partition[i];
    }
    // condition (2): every cross-selection independent
    bool ok = true;
    for_each_cross_selection(G.partition, G.type, [&](const std::vector<int>& cols) {
        if (!gf::columns_independent(G.field, G.columns, cols)) ok = false;
    });
    if (!ok) fail("InvalidGenerator", "dependent cross-selection of columns");
    return G;
}

MultiSplitOA expand(const GeneratorMatrix& G, long long budget) {
    const auto& F = G.field;
    int s = G.rows();
    int sum_d = std::accumulate(G.type.begin(), G.type.end(), 0);
    if (sum_d > s) fail("InvalidGenerator", "type sum exceeds row count");

    MultiSplitOA A;
    A.q = F.q();
    A.partition = G.partition;
    A.type = G.type;
    A.index = ipow(F.q(), s - sum_d);

    long long nrows = ipow(F.q(), s);
    A.rows.reserve(size_t(nrows));
    std::vector<gf::Elem> x(s, 0);
    while (true) {
        A.rows.push_back(gf::row_times_matrix(F, x, G.columns));
        int i = s - 1;
        while (i >= 0 && ++x[i] == F.q()) x[i--] = 0;
        if (i < 0) break;
    }

    // brute-force MSOA verification within budget
    long long n_selections = 0;
    for_each_cross_selection(A.partition, A.type, [&](const std::vector<int>&) { ++n_selections; });
    if (n_selections * nrows <= budget) {
        bool ok = true;
        for_each_cross_selection(A.partition, A.type, [&](const std::vector<int>& cols) {
            if (!ok) return;
            std::map<std::vector<int>, long long> counts;
            for (const auto& row : A.rows) {
                std::vector<int> tuple;
                for (int c : cols) tuple.push_back(row[c]);
                ++counts[tuple];
            }
            if ((long long)counts.size() != ipow(A.q, int(cols.size()))) ok = false;
            for (const auto& [tup, c] : counts)
                if (c != A.index) ok = false;
        });
        if (!ok) fail("VerificationFailed", "expanded array violates the tuple-count invariant");
        A.verified = true;
    }
    return A;
}

design::Design relabel(const MultiSplitOA& A) {
    design::Design D;
    for (int k : A.partition) D.layer_sizes.push_back(A.q * k);
    int t = int(A.partition.size());
    for (const auto& row : A.rows) {
        design::SuperBlock B;
        int off = 0;
        for (int i = 0; i < t; ++i) {
            std::vector<int> sub;
            for (int j = 0; j < A.partition[i]; ++j) sub.push_back(row[off + j] + j * A.q);
            std::sort(sub.begin(), sub.end());
            B.sub.push_back(std::move(sub));
            off += A.partition[i];
        }
        D.blocks.push_back(std::move(B));
    }
    return D;
}

std::vector<design::SuperBlock> supplementary_blocks(const std::vector<int>& partition, int q,
                                                     long long copies) {
    int t = int(partition.size());
    if (t < 2 || t > 3) fail("InvalidParameter", "supplement defined for 2 or 3 layers");
    if (copies < 1) fail("InvalidParameter", "need at least one copy");

    std::vector<design::SuperBlock> supplement;
    std::vector<int> group(t, 0);
    while (true) {
        design::SuperBlock B;
        for (int i = 0; i < t; ++i) {
            std::vector<int> sub(q);
            std::iota(sub.begin(), sub.end(), group[i] * q);
            B.sub.push_back(std::move(sub));
        }
        supplement.push_back(std::move(B));
        int i = t - 1;
        while (i >= 0 && ++group[i] == partition[i]) group[i--] = 0;
        if (i < 0) break;
    }
    std::vector<design::SuperBlock> out;
    for (long long c = 0; c < copies; ++c)
        out.insert(out.end(), supplement.begin(), supplement.end());
    return out;
}

GeneratorDesignResult design_from_generator(const GeneratorMatrix& G, bool with_supplement) {
    bool all_ones = std::all_of(G.type.begin(), G.type.end(), [](int d) { return d == 1; });
    if (!all_ones && !with_supplement)
        fail("TypeNeedsSupplement", "types with some d_i >= 2 require the supplement");

    MultiSplitOA A = expand(G);
    GeneratorDesignResult res;
    res.rho = A.index;
    res.design = relabel(A);
    if (!all_ones && with_supplement) {
        auto supp = supplementary_blocks(G.partition, G.field.q(), A.index);
        res.design.blocks.insert(res.design.blocks.end(), supp.begin(), supp.end());
    }
    res.design.validate();

    auto lambdas = design::constant_subtype(res.design, G.type);
    if (!lambdas)
        fail("VerificationFailed", "constructed design is not constant at the declared type");
    res.full_type_lambda = *lambdas;
    res.fully_regular = design::verify(res.design, G.type).ok;
    return res;
}

GeneratorMatrix generator_from_geometry(GeometrySource source, int d, int q,
                                        const std::vector<int>& partition,
                                        const std::vector<int>& type) {
    gf::Field F(q);
    auto take_columns = [&](const std::vector<std::vector<gf::Elem>>& vecs) {
        int m = 0;
        for (int k : partition) m += k;
        if (m > int(vecs.size())) fail("InfeasiblePartition", "partition exceeds available points");
        gf::Matrix cols(vecs[0].size(), std::vector<gf::Elem>(m));
        for (int j = 0; j < m; ++j)
            for (size_t i = 0; i < vecs[j].size(); ++i) cols[i][j] = vecs[j][i];
        return cols;
    };

    switch (source) {
        case GeometrySource::PgPoints: {
            if (partition.size() != 2) fail("InfeasiblePartition", "pg_points needs 2 partitions");
            auto pts = geom::enumerate_points(geom::Kind::Projective, d, F);
            return make_generator(F, take_columns(pts.vectors), partition, type);
        }
        case GeometrySource::Cap: {
            if (partition.size() != 3) fail("InfeasiblePartition", "cap source needs 3 partitions");
            auto pts = geom::enumerate_points(geom::Kind::Projective, d, F);
            int need = partition[0] + partition[1] + partition[2];
            auto cap = geom::find_cap(d, F);
            if (need > int(cap.size())) fail("InfeasiblePartition", "partition exceeds cap size");
            std::vector<std::vector<gf::Elem>> vecs;
            for (int lbl : cap) vecs.push_back(pts.vectors[lbl]);
            return make_generator(F, take_columns(vecs), partition, type);
        }
        case GeometrySource::LineSplit: {
            if (partition.size() != 2) fail("InfeasiblePartition", "line_split needs 2 partitions");
            if (partition[0] > q + 1 || partition[1] > q * q)
                fail("InfeasiblePartition", "line_split needs k1 <= q+1, k2 <= q^2");
            auto pts = geom::enumerate_points(geom::Kind::Projective, 2, F);
            auto lines = geom::enumerate_flats(geom::Kind::Projective, 2, F, 1);
            const auto& L = lines.front();
            std::vector<std::vector<gf::Elem>> vecs;
            for (int lbl : L.points) vecs.push_back(pts.vectors[lbl]);
            for (int lbl = 0; lbl < pts.size(); ++lbl)
                if (!std::binary_search(L.points.begin(), L.points.end(), lbl))
                    vecs.push_back(pts.vectors[lbl]);
            // columns: first k1 on the line, next k2 off it
            std::vector<std::vector<gf::Elem>> chosen(vecs.begin(), vecs.begin() + partition[0]);
            chosen.insert(chosen.end(), vecs.begin() + (q + 1),
                          vecs.begin() + (q + 1) + partition[1]);
            return make_generator(F, take_columns(chosen), partition, type);
        }
        case GeometrySource::TwoLines: {
            if (partition.size() != 2 || partition[0] != q || partition[1] != q)
                fail("InfeasiblePartition", "two_lines needs partition (q, q)");
            auto pts = geom::enumerate_points(geom::Kind::Projective, 2, F);
            auto lines = geom::enumerate_flats(geom::Kind::Projective, 2, F, 1);
            // two distinct lines through the lexicographically first point
            int p = 0;
            std::vector<const geom::Flat*> through;
            for (const auto& L : lines)
                if (std::binary_search(L.points.begin(), L.points.end(), p)) through.push_back(&L);
            std::vector<std::vector<gf::Elem>> vecs;
            for (int side = 0; side < 2; ++side)
                for (int lbl : through[side]->points)
                    if (lbl != p) vecs.push_back(pts.vectors[lbl]);
            return make_generator(F, take_columns(vecs), partition, type);
        }
    }
    fail("InvalidParameter", "unknown geometry source");
}

}  // namespace dropout::oa

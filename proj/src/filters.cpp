#include "dropout/filters.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace dropout::filters {

std::vector<int> delta(const std::vector<int>& B, int v) {
    if (B.size() < 2) fail("InvalidParameter", "need at least two elements");
    std::vector<int> out;
    for (int a : B)
        for (int b : B)
            if (a != b) out.push_back(((a - b) % v + v) % v);
    std::sort(out.begin(), out.end());
    return out;
}

VerifyResult verify_difference_family(int v, const std::vector<std::vector<int>>& blocks) {
    VerifyResult res;
    if (blocks.empty()) {
        res.violation = "(i): empty family";
        return res;
    }
    int k = int(blocks[0].size());
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (int(blocks[i].size()) != k) {
            res.violation = "(i): block " + std::to_string(i) + " has size " +
                            std::to_string(blocks[i].size()) + ", expected " + std::to_string(k);
            return res;
        }
        for (int x : blocks[i])
            if (x < 0 || x >= v) fail("InvalidParameter", "residue out of range");
    }
    // (ii): every residue covered the same number of times
    std::vector<long long> cover(v, 0);
    for (const auto& B : blocks)
        for (int x : B) ++cover[x];
    for (int x = 0; x < v; ++x)
        if (cover[x] != cover[0]) {
            res.violation = "(ii): residue " + std::to_string(x) + " covered " +
                            std::to_string(cover[x]) + " times, residue 0 " +
                            std::to_string(cover[0]) + " times";
            return res;
        }
    // (iii): differences cover every nonzero residue the same number of times
    std::vector<long long> diff(v, 0);
    for (const auto& B : blocks)
        for (int d : delta(B, v)) ++diff[d];
    for (int x = 2; x < v; ++x)
        if (diff[x] != diff[1]) {
            res.violation = "(iii): difference " + std::to_string(x) + " occurs " +
                            std::to_string(diff[x]) + " times, difference 1 " +
                            std::to_string(diff[1]) + " times";
            return res;
        }
    res.ok = true;
    res.params.k = k;
    res.params.r = int(cover[0]);
    res.params.lambda = v > 1 ? diff[1] : 0;
    return res;
}

Mat cyclic_matrix(const std::vector<int>& B, int v) {
    Mat H(v, std::vector<int>(v, 0));
    for (int j = 0; j < v; ++j)
        for (int b : B) {
            if (b < 0 || b >= v) fail("InvalidParameter", "residue out of range");
            H[j][(b + j) % v] = 1;
        }
    return H;
}

VerifyResult verify_filter_family(const std::vector<Mat>& family) {
    VerifyResult res;
    if (family.empty()) {
        res.violation = "(1): empty family";
        return res;
    }
    int v = int(family[0].size());
    for (const auto& H : family) {
        if (int(H.size()) != v) fail("InvalidParameter", "matrix sizes differ");
        for (const auto& row : H) {
            if (int(row.size()) != v) fail("InvalidParameter", "matrix not square");
            for (int x : row)
                if (x != 0 && x != 1) fail("InvalidParameter", "entries must be 0/1");
        }
    }
    // (1): constant row and column sums k
    int k = std::accumulate(family[0][0].begin(), family[0][0].end(), 0);
    for (size_t m = 0; m < family.size(); ++m) {
        for (int i = 0; i < v; ++i) {
            int rs = std::accumulate(family[m][i].begin(), family[m][i].end(), 0);
            int cs = 0;
            for (int j = 0; j < v; ++j) cs += family[m][j][i];
            if (rs != k) {
                res.violation = "(1): matrix " + std::to_string(m) + " row " + std::to_string(i) +
                                " sums to " + std::to_string(rs) + ", expected " +
                                std::to_string(k);
                return res;
            }
            if (cs != k) {
                res.violation = "(1): matrix " + std::to_string(m) + " column " +
                                std::to_string(i) + " sums to " + std::to_string(cs) +
                                ", expected " + std::to_string(k);
                return res;
            }
        }
    }
    // (2): sum of matrices is r J
    long long r = 0;
    for (const auto& H : family) r += H[0][0];
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) {
            long long s = 0;
            for (const auto& H : family) s += H[i][j];
            if (s != r) {
                res.violation = "(2): cell (" + std::to_string(i) + "," + std::to_string(j) +
                                ") covered " + std::to_string(s) + " times, expected " +
                                std::to_string(r);
                return res;
            }
        }
    // (3): sum of Gram matrices is lambda J + (kb - lambda) I, both sides
    long long b = (long long)family.size();
    auto gram_sum = [&](bool transpose_first) {
        std::vector<std::vector<long long>> G(v, std::vector<long long>(v, 0));
        for (const auto& H : family)
            for (int i = 0; i < v; ++i)
                for (int j = 0; j < v; ++j) {
                    long long dot = 0;
                    for (int l = 0; l < v; ++l)
                        dot += transpose_first ? (long long)H[l][i] * H[l][j]
                                               : (long long)H[i][l] * H[j][l];
                    G[i][j] += dot;
                }
        return G;
    };
    auto GT = gram_sum(true);   // sum H^T H
    auto GG = gram_sum(false);  // sum H H^T
    long long lambda = GT[0][1 % v];
    for (const auto* G : {&GT, &GG})
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) {
                long long expect = (i == j) ? lambda + (k * b - lambda) : lambda;
                if ((*G)[i][j] != expect) {
                    res.violation = "(3): Gram sum entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is " + std::to_string((*G)[i][j]) +
                                    ", expected " + std::to_string(expect);
                    return res;
                }
            }
    res.ok = true;
    res.params.k = k;
    res.params.r = int(r);
    res.params.lambda = lambda;
    return res;
}

std::vector<Mat> scramble(const std::vector<Mat>& family, const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm) {
    if (family.empty()) return {};
    int v = int(family[0].size());
    auto check_perm = [&](const std::vector<int>& p) {
        if (int(p.size()) != v) fail("InvalidParameter", "permutation length mismatch");
        std::vector<bool> seen(v, false);
        for (int x : p) {
            if (x < 0 || x >= v || seen[x]) fail("InvalidParameter", "not a permutation");
            seen[x] = true;
        }
    };
    check_perm(row_perm);
    check_perm(col_perm);
    std::vector<Mat> out;
    for (const auto& H : family) {
        Mat M(v, std::vector<int>(v, 0));
        for (int i = 0; i < v; ++i)
            for (int j = 0; j < v; ++j) M[i][col_perm[j]] = H[row_perm[i]][j];
        out.push_back(std::move(M));
    }
    return out;
}

std::vector<Mat> scramble_seeded(const std::vector<Mat>& family, uint64_t seed) {
    if (family.empty()) return {};
    int v = int(family[0].size());
    std::mt19937_64 rng(seed);
    auto random_perm = [&]() {
        std::vector<int> p(v);
        std::iota(p.begin(), p.end(), 0);
        // explicit Fisher-Yates so the result is stable across platforms
        for (int i = v - 1; i > 0; --i) {
            int j = int(rng() % uint64_t(i + 1));
            std::swap(p[i], p[j]);
        }
        return p;
    };
    auto P = random_perm();
    auto Q = random_perm();
    return scramble(family, P, Q);
}

std::vector<std::vector<std::vector<int>>> search_difference_families(int v, int k, int r_max) {
    if (v > 15) fail("BudgetExceeded", "search limited to v <= 15");
    if (k < 2 || k > v) fail("InvalidParameter", "need 2 <= k <= v");
    std::vector<std::vector<std::vector<int>>> out;
    if (k > r_max) return out;  // a development of one base block has r = k
    std::set<std::vector<std::vector<int>>> seen;

    // base blocks containing 0, enumerated lexicographically
    std::vector<int> idx(k - 1);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        std::vector<int> base{0};
        base.insert(base.end(), idx.begin(), idx.end());
        std::vector<std::vector<int>> fam;
        for (int s = 0; s < v; ++s) {
            std::vector<int> B;
            for (int x : base) B.push_back((x + s) % v);
            std::sort(B.begin(), B.end());
            fam.push_back(std::move(B));
        }
        auto res = verify_difference_family(v, fam);
        if (res.ok && res.params.r <= r_max) {
            auto canon = fam;
            std::sort(canon.begin(), canon.end());
            if (seen.insert(canon).second) out.push_back(fam);
        }
        int i = k - 2;
        while (i >= 0 && idx[i] == v - (k - 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::string write_dfilter(const std::vector<Mat>& family, int v) {
    std::ostringstream os;
    os << "DFILTER 1\n";
    os << "v " << v << "\n";
    os << "matrices " << family.size() << "\n";
    for (size_t m = 0; m < family.size(); ++m) {
        if (m) os << "\n";
        for (const auto& row : family[m]) {
            for (int x : row) os << (x ? '1' : '0');
            os << "\n";
        }
    }
    return os.str();
}

std::vector<Mat> read_dfilter(std::istream& in) {
    int lineno = 0;
    auto next_line = [&](bool allow_eof = false) -> std::string {
        std::string line;
        if (!std::getline(in, line)) {
            if (allow_eof) return {};
            fail("ParseError", "line " + std::to_string(lineno + 1) + ": unexpected end of input");
        }
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };
    if (next_line() != "DFILTER 1")
        fail("ParseError", "line 1: expected header 'DFILTER 1'");
    int v = 0, b = 0;
    {
        std::istringstream ls(next_line());
        std::string kw;
        if (!(ls >> kw >> v) || kw != "v" || v < 1)
            fail("ParseError", "line 2: expected 'v <v>'");
    }
    {
        std::istringstream ls(next_line());
        std::string kw;
        if (!(ls >> kw >> b) || kw != "matrices" || b < 0)
            fail("ParseError", "line 3: expected 'matrices <b>'");
    }
    std::vector<Mat> family;
    for (int m = 0; m < b; ++m) {
        if (m) {
            std::string blank = next_line();
            if (!blank.empty())
                fail("ParseError",
                     "line " + std::to_string(lineno) + ": expected blank separator");
        }
        Mat H;
        for (int i = 0; i < v; ++i) {
            std::string row = next_line();
            if (int(row.size()) != v)
                fail("ParseError", "line " + std::to_string(lineno) + ": row length mismatch");
            std::vector<int> r;
            for (char c : row) {
                if (c != '0' && c != '1')
                    fail("ParseError",
                         "line " + std::to_string(lineno) + ": rows must contain only 0/1");
                r.push_back(c - '0');
            }
            H.push_back(std::move(r));
        }
        family.push_back(std::move(H));
    }
    return family;
}

}  // namespace dropout::filters

#include <cstdint>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dropout/design.hpp"
#include "dropout/design_io.hpp"
#include "dropout/filters.hpp"
#include "dropout/geo_designs.hpp"
#include "dropout/oa.hpp"
#include "dropout/optlab.hpp"

namespace {

using namespace dropout;

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t pos = 0;
            int v = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            fail("InvalidParameter", what + ": bad integer '" + tok + "'");
        }
    }
    if (out.empty()) fail("InvalidParameter", what + ": empty list");
    return out;
}

// "layer:pt,layer:pt" with 1-based layers, 0-based points
std::vector<std::pair<int, int>> parse_points(const std::string& s) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto colon = tok.find(':');
        if (colon == std::string::npos)
            fail("InvalidParameter", "points: expected layer:pt, got '" + tok + "'");
        int layer = 0, pt = 0;
        try {
            layer = std::stoi(tok.substr(0, colon));
            pt = std::stoi(tok.substr(colon + 1));
        } catch (const std::exception&) {
            fail("InvalidParameter", "points: bad integer in '" + tok + "'");
        }
        if (layer < 1) fail("InvalidParameter", "points: layers are 1-based");
        out.push_back({layer - 1, pt});
    }
    return out;
}

design::Design load_design(const std::string& path) {
    return design::read_ddesign_string(design::load_file(path));
}

void print_profile(const design::Design& D, const design::TypeVector& type,
                   const design::Profile& prof) {
    if (!prof.ok) {
        std::cout << "NOT VERIFIED\n";
        if (prof.counterexample) std::cout << prof.counterexample->describe() << "\n";
        return;
    }
    std::cout << "VERIFIED type (";
    for (size_t i = 0; i < type.size(); ++i) std::cout << (i ? "," : "") << type[i];
    std::cout << ")" << (prof.degenerate ? " [degenerate: some lambda = 0]" : "") << "\n";
    for (size_t w = 0; w < prof.windows.size(); ++w) {
        std::cout << "window " << w + 1 << ":";
        for (const auto& [g, lam] : prof.windows[w]) {
            std::cout << " (";
            for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? "," : "") << g[i];
            std::cout << ")=" << lam;
        }
        std::cout << "\n";
    }
    (void)D;
}

struct Args {
    std::string family, in, in2, out, points, layers_opt, base, generator, source, type_s,
        partition_s;
    std::vector<std::string> inputs;
    int q = 0, d = 0, t = -1, n = 0, v = 0, k = 0, samples = 500;
    uint64_t seed = 0;
    bool shifted = false, has_scramble = false;
    uint64_t scramble_seed = 0;
};

gf::Matrix parse_generator(const std::string& s) {
    gf::Matrix M;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) {
        std::vector<int> r = parse_int_list(row, "generator row");
        M.push_back(r);
    }
    if (M.empty()) fail("InvalidParameter", "generator: empty matrix");
    return M;
}

int cmd_construct(const Args& a) {
    design::Design D;
    design::TypeVector type;
    std::ostringstream predicted;

    if (a.family == "oa") {
        if (a.q < 2) fail("InvalidParameter", "oa family needs --q");
        auto partition = parse_int_list(a.partition_s, "partition");
        type = a.type_s.empty() ? design::TypeVector(partition.size(), 1)
                                : parse_int_list(a.type_s, "type");
        oa::GeneratorMatrix G = [&] {
            if (!a.generator.empty())
                return oa::make_generator(gf::Field(a.q), parse_generator(a.generator),
                                          partition, type);
            std::string src = a.source;
            int d = a.d;
            if (src.empty()) {
                src = "pg-points";
                if (d == 0) {
                    d = 0;
                    for (int x : type) d += x;
                    d -= 1;  // s = sum(type) rows suffice for the default
                }
            }
            oa::GeometrySource gs;
            if (src == "pg-points")
                gs = oa::GeometrySource::PgPoints;
            else if (src == "cap")
                gs = oa::GeometrySource::Cap;
            else if (src == "line-split")
                gs = oa::GeometrySource::LineSplit;
            else if (src == "two-lines")
                gs = oa::GeometrySource::TwoLines;
            else
                fail("InvalidParameter", "unknown oa source '" + src + "'");
            if (gs != oa::GeometrySource::PgPoints && d == 0) d = 2;
            return oa::generator_from_geometry(gs, d, a.q, partition, type);
        }();
        bool needs_supp = false;
        for (int x : type)
            if (x > 1) needs_supp = true;
        auto res = oa::design_from_generator(G, needs_supp);
        D = res.design;
        predicted << "rho=" << res.rho << " lambda=" << res.full_type_lambda[0]
                  << " b=" << D.n_blocks() << " layers=";
        for (size_t i = 0; i < D.layer_sizes.size(); ++i)
            predicted << (i ? "," : "") << D.layer_sizes[i];
    } else if (a.family == "pg-pencil-lines" || a.family == "pg-pencil-planes" ||
               a.family == "ag-hyperplane" || a.family == "spread") {
        geodesigns::GeoDesign g;
        if (a.family == "pg-pencil-lines")
            g = geodesigns::pg_pencil_lines_design(a.d, a.q);
        else if (a.family == "pg-pencil-planes")
            g = geodesigns::pg_pencil_planes_design(a.d, a.q);
        else if (a.family == "ag-hyperplane")
            g = geodesigns::ag_hyperplane_design(a.d, a.q, a.t < 0 ? 2 : a.t);
        else
            g = geodesigns::pg_spread_design(a.d, a.q, a.t < 0 ? 1 : a.t);
        D = g.design;
        type = g.declared_type;
        predicted << "v=" << g.predicted.v << " k=" << g.predicted.k
                  << " lambda=" << g.predicted.lambda << " n=" << g.predicted.n
                  << " b=" << g.predicted.b;
    } else if (a.family == "product") {
        if (a.inputs.size() < 2) fail("InvalidParameter", "product family needs >= 2 --inputs");
        std::vector<design::Design> parts;
        for (const auto& p : a.inputs) parts.push_back(load_design(p));
        D = design::direct_product(parts);
        type.assign(D.n_layers(), 1);
        predicted << "b=" << D.n_blocks();
    } else {
        fail("InvalidParameter", "unknown family '" + a.family + "'");
    }

    auto prof = design::verify(D, type);
    bool counted_ok = prof.ok;
    long long lam = counted_ok ? prof.lambda(0, type) : -1;
    if (!counted_ok) {
        // non-proper spread designs are regular at the exact type only
        auto lams = design::constant_subtype(D, type);
        if (lams) {
            counted_ok = true;
            lam = (*lams)[0];
        }
    }
    std::cout << "predicted: " << predicted.str() << "\n";
    std::cout << "verified: " << (counted_ok ? "yes" : "NO") << " lambda=" << lam
              << " b=" << D.n_blocks() << "\n";
    if (!a.out.empty()) design::save_file(a.out, design::write_ddesign(D));
    if (!counted_ok) fail("VerificationFailed", "constructed design failed self-verification");
    return 0;
}

int cmd_filter_gen(const Args& a) {
    if (a.v < 2) fail("InvalidParameter", "filter-gen needs --v >= 2");
    std::vector<int> base;
    if (!a.base.empty()) {
        base = parse_int_list(a.base, "base");
    } else {
        if (a.k < 2) fail("InvalidParameter", "filter-gen needs --base or --k");
        auto fams = filters::search_difference_families(a.v, a.k, a.v);
        if (fams.empty()) fail("VerificationFailed", "no difference family found");
        base = fams.front().front();
    }
    std::vector<std::vector<int>> blocks;
    for (int s = 0; s < a.v; ++s) {
        std::vector<int> B;
        for (int x : base) B.push_back((x + s) % a.v);
        std::sort(B.begin(), B.end());
        blocks.push_back(B);
    }
    auto dres = filters::verify_difference_family(a.v, blocks);
    if (!dres.ok) fail("VerificationFailed", "base block fails conditions: " + dres.violation);
    std::vector<filters::Mat> family;
    for (const auto& B : blocks) family.push_back(filters::cyclic_matrix(B, a.v));
    if (a.has_scramble) {
        family = filters::scramble_seeded(family, a.scramble_seed);
        std::cout << "scramble seed: " << a.scramble_seed << "\n";
    }
    auto res = filters::verify_filter_family(family);
    if (!res.ok) fail("VerificationFailed", "filter family violation: " + res.violation);
    std::cout << "k=" << res.params.k << " r=" << res.params.r << " lambda=" << res.params.lambda
              << " matrices=" << family.size() << "\n";
    if (!a.out.empty()) design::save_file(a.out, filters::write_dfilter(family, a.v));
    return 0;
}

int run(const Args& a, const std::string& verb) {
    if (verb == "construct") return cmd_construct(a);

    if (verb == "verify") {
        auto D = load_design(a.in);
        auto type = parse_int_list(a.type_s, "type");
        auto prof = design::verify(D, type, a.shifted);
        print_profile(D, type, prof);
        if (!prof.ok) fail("VerificationFailed", "concurrence counts are not constant");
        return 0;
    }
    if (verb == "complement") {
        auto D = load_design(a.in);
        auto C = design::complement(D);
        design::save_file(a.out, design::write_ddesign(C));
        std::cout << "complemented " << D.n_blocks() << " blocks\n";
        return 0;
    }
    if (verb == "delete") {
        auto D = load_design(a.in);
        auto R = parse_points(a.points);
        auto E = design::delete_points(D, R);
        design::save_file(a.out, design::write_ddesign(E));
        std::cout << "deleted " << R.size() << " points; layers now";
        for (int v : E.layer_sizes) std::cout << " " << v;
        std::cout << "\n";
        return 0;
    }
    if (verb == "extend") {
        auto D = load_design(a.in);
        design::TypeVector type = a.type_s.empty() ? design::TypeVector(D.n_layers(), 1)
                                                   : parse_int_list(a.type_s, "type");
        auto E = design::extend(D, type, a.n);
        design::save_file(a.out, design::write_ddesign(E));
        std::cout << "extended to " << E.n_layers() << " layers\n";
        return 0;
    }
    if (verb == "restrict") {
        auto D = load_design(a.in);
        auto layers = parse_int_list(a.layers_opt, "layers");
        for (int& l : layers) --l;  // CLI layers are 1-based
        auto R = design::restrict(D, layers);
        design::save_file(a.out, design::write_ddesign(R));
        std::cout << "restricted to " << R.n_layers() << " layers\n";
        return 0;
    }
    if (verb == "product") {
        if (a.inputs.size() < 2) fail("InvalidParameter", "product needs >= 2 input files");
        std::vector<design::Design> parts;
        for (const auto& p : a.inputs) parts.push_back(load_design(p));
        auto P = design::direct_product(parts);
        design::save_file(a.out, design::write_ddesign(P));
        std::cout << "product has " << P.n_blocks() << " blocks over " << P.n_layers()
                  << " layers\n";
        return 0;
    }
    if (verb == "export-masks") {
        auto D = load_design(a.in);
        design::save_file(a.out, design::write_dmask(D));
        std::cout << "wrote " << D.n_blocks() << " mask lines\n";
        return 0;
    }
    if (verb == "filter-gen") return cmd_filter_gen(a);
    if (verb == "filter-verify") {
        std::istringstream in(design::load_file(a.in));
        auto family = filters::read_dfilter(in);
        auto res = filters::verify_filter_family(family);
        if (!res.ok) fail("VerificationFailed", res.violation);
        std::cout << "k=" << res.params.k << " r=" << res.params.r
                  << " lambda=" << res.params.lambda << "\n";
        return 0;
    }
    if (verb == "experiment") {
        optlab::SampleParams p;
        auto res = optlab::run_experiment(a.samples, p, a.seed);
        auto csv = optlab::experiment_csv(res);
        if (!a.out.empty()) design::save_file(a.out, csv);
        std::cout << csv;
        return 0;
    }
    fail("InvalidParameter", "unknown verb");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layered dropout-design construction, verification and export"};
    app.require_subcommand(1);
    Args a;

    auto add_common = [&](CLI::App* sub, bool needs_in, bool needs_out) {
        if (needs_in) sub->add_option("file", a.in, "input file")->required();
        if (needs_out) sub->add_option("--out", a.out, "output file")->required();
    };

    auto* construct = app.add_subcommand("construct", "build a design from a named family");
    construct->add_option("--family", a.family)->required();
    construct->add_option("--q", a.q);
    construct->add_option("--d", a.d);
    construct->add_option("--t", a.t);
    construct->add_option("--partition", a.partition_s);
    construct->add_option("--type", a.type_s);
    construct->add_option("--generator", a.generator, "rows as 'a,b,c;d,e,f'");
    construct->add_option("--source", a.source, "pg-points|cap|line-split|two-lines");
    construct->add_option("--inputs", a.inputs, "component files for --family product");
    construct->add_option("--out", a.out);

    auto* verify = app.add_subcommand("verify", "check concurrence constancy at a type");
    add_common(verify, true, false);
    verify->add_option("--type", a.type_s)->required();
    verify->add_flag("--shifted", a.shifted, "check window i at the i-shifted type");

    auto* comp = app.add_subcommand("complement", "per-sub-block complement");
    add_common(comp, true, true);

    auto* del = app.add_subcommand("delete", "delete points (layer:pt, layers 1-based)");
    add_common(del, true, true);
    del->add_option("--points", a.points)->required();

    auto* ext = app.add_subcommand("extend", "cyclic extension to n layers");
    add_common(ext, true, true);
    ext->add_option("--n", a.n)->required();
    ext->add_option("--type", a.type_s);

    auto* rst = app.add_subcommand("restrict", "keep only the listed layers (1-based)");
    add_common(rst, true, true);
    rst->add_option("--layers", a.layers_opt)->required();

    auto* prod = app.add_subcommand("product", "direct product of designs");
    prod->add_option("files", a.inputs, "component files")->required();
    prod->add_option("--out", a.out)->required();

    auto* masks = app.add_subcommand("export-masks", "write keep-bitmask lines");
    add_common(masks, true, true);

    auto* fg = app.add_subcommand("filter-gen", "cyclic balanced filter family");
    fg->add_option("--v", a.v)->required();
    fg->add_option("--k", a.k);
    fg->add_option("--base", a.base, "base block residues, e.g. 0,1,3");
    fg->add_option("--scramble-seed", a.scramble_seed)->trigger_on_parse();
    fg->add_option("--out", a.out);

    auto* fv = app.add_subcommand("filter-verify", "check filter family conditions");
    fv->add_option("file", a.in)->required();

    auto* exp = app.add_subcommand("experiment", "random incidence determinant experiment");
    exp->add_option("--samples", a.samples);
    exp->add_option("--seed", a.seed);
    exp->add_option("--out", a.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    a.has_scramble = fg->count("--scramble-seed") > 0;

    try {
        return run(a, app.get_subcommands().front()->get_name());
    } catch (const dropout::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const std::string& c = e.code();
        bool domain = c == "SubBlockSwallowed" || c == "NotProper" || c == "VerificationFailed" ||
                      c == "ShiftTypeMissing";
        return domain ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

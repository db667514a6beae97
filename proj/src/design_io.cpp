#include "dropout/design_io.hpp"

#include <fstream>
#include <sstream>

namespace dropout::design {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    fail("ParseError", "line " + std::to_string(line) + ": " + what);
}

std::string next_line(std::istream& in, int& lineno) {
    std::string line;
    if (!std::getline(in, line)) parse_fail(lineno + 1, "unexpected end of input");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

struct Header {
    int n = 0, b = 0;
    std::vector<int> sizes;
};

Header read_header(std::istream& in, int& lineno, const std::string& magic) {
    Header h;
    if (next_line(in, lineno) != magic) parse_fail(lineno, "expected header '" + magic + "'");
    {
        std::istringstream ls(next_line(in, lineno));
        std::string kw;
        if (!(ls >> kw >> h.n) || kw != "layers" || h.n < 1)
            parse_fail(lineno, "expected 'layers <n>'");
    }
    {
        std::istringstream ls(next_line(in, lineno));
        std::string kw;
        if (!(ls >> kw) || kw != "sizes") parse_fail(lineno, "expected 'sizes v1 .. vn'");
        int v;
        while (ls >> v) h.sizes.push_back(v);
        if (int(h.sizes.size()) != h.n) parse_fail(lineno, "size count does not match layers");
    }
    {
        std::istringstream ls(next_line(in, lineno));
        std::string kw;
        if (!(ls >> kw >> h.b) || kw != "blocks" || h.b < 0)
            parse_fail(lineno, "expected 'blocks <b>'");
    }
    return h;
}

std::string header_text(const std::string& magic, const Design& D) {
    std::ostringstream os;
    os << magic << "\n";
    os << "layers " << D.n_layers() << "\n";
    os << "sizes";
    for (int v : D.layer_sizes) os << " " << v;
    os << "\n";
    os << "blocks " << D.n_blocks() << "\n";
    return os.str();
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            parts.push_back(s.substr(pos));
            break;
        }
        parts.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
    return parts;
}

}  // namespace

std::string write_ddesign(const Design& D) {
    D.validate();
    std::ostringstream os;
    os << header_text("DDESIGN 1", D);
    for (const auto& B : D.blocks) {
        for (size_t i = 0; i < B.sub.size(); ++i) {
            if (i) os << " | ";
            for (size_t j = 0; j < B.sub[i].size(); ++j) {
                if (j) os << " ";
                os << B.sub[i][j];
            }
        }
        os << "\n";
    }
    return os.str();
}

Design read_ddesign(std::istream& in) {
    int lineno = 0;
    Header h = read_header(in, lineno, "DDESIGN 1");
    Design D;
    D.layer_sizes = h.sizes;
    for (int s = 0; s < h.b; ++s) {
        std::string line = next_line(in, lineno);
        auto parts = split(line, " | ");
        if (int(parts.size()) != h.n) parse_fail(lineno, "expected " + std::to_string(h.n) +
                                                             " sub-blocks");
        SuperBlock B;
        for (int i = 0; i < h.n; ++i) {
            std::istringstream ps(parts[i]);
            std::vector<int> pts;
            int p;
            while (ps >> p) pts.push_back(p);
            if (!ps.eof()) parse_fail(lineno, "bad point token");
            if (pts.empty()) parse_fail(lineno, "empty sub-block");
            for (size_t j = 0; j < pts.size(); ++j) {
                if (pts[j] < 0 || pts[j] >= h.sizes[i]) parse_fail(lineno, "point out of range");
                if (j > 0 && pts[j] <= pts[j - 1]) parse_fail(lineno, "points must be ascending");
            }
            B.sub.push_back(std::move(pts));
        }
        D.blocks.push_back(std::move(B));
    }
    D.validate();
    return D;
}

Design read_ddesign_string(const std::string& text) {
    std::istringstream in(text);
    return read_ddesign(in);
}

std::string write_dmask(const Design& D) {
    D.validate();
    std::ostringstream os;
    os << header_text("DMASK 1", D);
    for (const auto& B : D.blocks) {
        for (size_t i = 0; i < B.sub.size(); ++i) {
            if (i) os << "|";
            std::string bits(D.layer_sizes[i], '0');
            for (int p : B.sub[i]) bits[p] = '1';
            os << bits;
        }
        os << "\n";
    }
    return os.str();
}

Design read_dmask(std::istream& in) {
    int lineno = 0;
    Header h = read_header(in, lineno, "DMASK 1");
    Design D;
    D.layer_sizes = h.sizes;
    for (int s = 0; s < h.b; ++s) {
        std::string line = next_line(in, lineno);
        auto parts = split(line, "|");
        if (int(parts.size()) != h.n) parse_fail(lineno, "expected " + std::to_string(h.n) +
                                                             " bitstrings");
        SuperBlock B;
        for (int i = 0; i < h.n; ++i) {
            if (int(parts[i].size()) != h.sizes[i]) parse_fail(lineno, "bitstring length mismatch");
            std::vector<int> pts;
            for (int j = 0; j < h.sizes[i]; ++j) {
                char c = parts[i][j];
                if (c == '1')
                    pts.push_back(j);
                else if (c != '0')
                    parse_fail(lineno, "bitstring must contain only 0/1");
            }
            if (pts.empty()) parse_fail(lineno, "empty mask");
            B.sub.push_back(std::move(pts));
        }
        D.blocks.push_back(std::move(B));
    }
    D.validate();
    return D;
}

void save_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open " + path + " for writing");
    out << content;
}

std::string load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace dropout::design

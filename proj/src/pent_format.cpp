#include "pentile/pent_format.hpp"

#include <fstream>
#include <sstream>

namespace pentile {

namespace {

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw SpecParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

Vector5d parse_five(const std::string& rest, const std::string& origin, int line,
                    const char* what) {
    std::istringstream in(rest);
    Vector5d v;
    for (int i = 0; i < 5; ++i) {
        if (!(in >> v(i))) fail(origin, line, std::string("expected five ") + what);
    }
    double extra;
    if (in >> extra) fail(origin, line, std::string("more than five ") + what);
    return v;
}

}  // namespace

std::vector<PentagonSpec> parse_pentagons(const std::string& text, const std::string& origin) {
    std::vector<PentagonSpec> out;
    PentagonSpec* current = nullptr;
    bool have_angles = false, have_edges = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    auto close_current = [&](int line) {
        if (!current) return;
        if (!have_angles) fail(origin, line, "pentagon '" + current->name + "' missing angles");
        if (!have_edges) fail(origin, line, "pentagon '" + current->name + "' missing edges");
    };

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (auto hash = line.find('#'); hash != std::string::npos)
            line = strip(line.substr(0, hash));
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        const std::string rest = strip(line.substr(kw.size()));

        if (kw == "pentagon") {
            close_current(line_no);
            if (rest.empty()) fail(origin, line_no, "pentagon without a name");
            out.emplace_back();
            current = &out.back();
            current->name = rest;
            have_angles = have_edges = false;
        } else if (!current) {
            fail(origin, line_no, "'" + kw + "' before any pentagon block");
        } else if (kw == "angles") {
            current->angles.deg = parse_five(rest, origin, line_no, "angles");
            have_angles = true;
        } else if (kw == "edges") {
            current->edges.len = parse_five(rest, origin, line_no, "edge lengths");
            have_edges = true;
        } else if (kw == "expect-type") {
            if (rest.empty()) fail(origin, line_no, "expect-type without a value");
            current->expected_type = rest;
        } else {
            fail(origin, line_no, "unknown keyword '" + kw + "'");
        }
    }
    close_current(line_no);
    if (out.empty()) fail(origin, std::max(1, line_no), "no pentagon blocks");
    return out;
}

std::vector<PentagonSpec> load_pentagons(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open pentagon spec: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_pentagons(buf.str(), path);
}

}  // namespace pentile

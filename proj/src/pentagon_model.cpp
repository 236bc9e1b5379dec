#include "pentile/pentagon_model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pentile {

double AngleRelation::evaluate(const AngleVector& a) const {
    double s = -static_cast<double>(rhs_deg);
    for (int v = 0; v < 5; ++v) s += coeff[v] * a.deg(v);
    return s;
}

std::string AngleRelation::str() const {
    std::string out;
    for (int v = 0; v < 5; ++v) {
        if (coeff[v] == 0) continue;
        if (!out.empty()) out += coeff[v] > 0 ? " + " : " - ";
        else if (coeff[v] < 0) out += "-";
        const int m = std::abs(coeff[v]);
        if (m != 1) out += std::to_string(m);
        out += vertex_name(v);
    }
    out += " = " + std::to_string(rhs_deg);
    return out;
}

double EdgeRelation::evaluate(const EdgeVector& e) const {
    double s = 0.0;
    for (int i = 0; i < 5; ++i) s += coeff[i] * e.len(i);
    return s;
}

std::string EdgeRelation::str() const {
    std::string lhs, rhs;
    for (int i = 0; i < 5; ++i) {
        if (coeff[i] == 0) continue;
        std::string& side = coeff[i] > 0 ? lhs : rhs;
        if (!side.empty()) side += " + ";
        const int m = std::abs(coeff[i]);
        if (m != 1) side += std::to_string(m);
        side += edge_name(i);
    }
    if (rhs.empty()) rhs = "0";
    if (lhs.empty()) lhs = "0";
    return lhs + " = " + rhs;
}

std::vector<EdgeRelation> TypeDefinition::equality_relations() const {
    std::vector<EdgeRelation> out;
    for (const auto& cls : edge_classes) {
        for (size_t i = 0; i + 1 < cls.size(); ++i) {
            EdgeRelation r;
            r.coeff[cls[i]] = 1;
            r.coeff[cls[i + 1]] = -1;
            out.push_back(r);
        }
    }
    out.insert(out.end(), edge_relations.begin(), edge_relations.end());
    return out;
}

namespace {

struct ParseCursor {
    std::string origin;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw TableError(origin + ":" + std::to_string(line_no) + ": " + msg);
    }
};

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Parses a signed linear combination of labels like "2A + B" or "a + 2c".
// `vertex` selects the label alphabet. Adds into coeff with the given sign.
void parse_combo(const std::string& text, bool vertex, int sign, std::array<int, 5>& coeff,
                 const ParseCursor& cur) {
    std::istringstream in(text);
    int pending_sign = sign;
    std::string tok;
    bool expect_term = true;
    while (in >> tok) {
        if (tok == "+") { expect_term = true; continue; }
        if (tok == "-") { pending_sign = -pending_sign; expect_term = true; continue; }
        if (!expect_term) cur.fail("missing operator before '" + tok + "'");
        size_t i = 0;
        int mult = 1;
        if (std::isdigit(static_cast<unsigned char>(tok[i]))) {
            size_t end;
            mult = std::stoi(tok, &end);
            i = end;
        }
        if (i + 1 != tok.size()) cur.fail("malformed term '" + tok + "'");
        const char label = tok[i];
        int idx;
        try {
            idx = vertex ? parse_vertex_label(label) : parse_edge_label(label);
        } catch (const std::invalid_argument&) {
            cur.fail(std::string("unknown ") + (vertex ? "vertex" : "edge") + " label '" +
                     label + "'");
        }
        coeff[idx] += pending_sign * mult;
        pending_sign = sign;
        expect_term = false;
    }
    if (expect_term) cur.fail("dangling operator in '" + text + "'");
}

}  // namespace

std::vector<TypeDefinition> parse_type_table(const std::string& text, const std::string& origin) {
    std::vector<TypeDefinition> table;
    TypeDefinition* current = nullptr;
    std::istringstream in(text);
    std::string raw;
    ParseCursor cur{origin, 0};
    bool any_content = false;

    while (std::getline(in, raw)) {
        ++cur.line_no;
        std::string line = strip(raw);
        if (auto hash = line.find('#'); hash != std::string::npos) line = strip(line.substr(0, hash));
        if (line.empty()) continue;
        any_content = true;

        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        std::string rest = strip(line.substr(kw.size()));

        if (kw == "type") {
            if (rest.empty()) cur.fail("type without a name");
            table.emplace_back();
            current = &table.back();
            current->name = rest;
            continue;
        }
        if (!current) cur.fail("'" + kw + "' outside a type block");

        if (kw == "edge-to-edge") {
            if (rest == "yes" || rest == "true") current->edge_to_edge = true;
            else if (rest == "no" || rest == "false") current->edge_to_edge = false;
            else cur.fail("edge-to-edge expects yes/no");
        } else if (kw == "angle") {
            auto eq = rest.find('=');
            if (eq == std::string::npos) cur.fail("angle relation needs '='");
            AngleRelation rel;
            parse_combo(strip(rest.substr(0, eq)), true, +1, rel.coeff, cur);
            const std::string rhs = strip(rest.substr(eq + 1));
            try {
                size_t end;
                rel.rhs_deg = std::stoi(rhs, &end);
                if (end != rhs.size()) throw std::invalid_argument(rhs);
            } catch (const std::exception&) {
                cur.fail("right-hand side '" + rhs + "' is not an integer");
            }
            if (rel.rhs_deg % 180 != 0)
                cur.fail("right-hand side " + std::to_string(rel.rhs_deg) +
                         " is not a multiple of 180");
            if (std::all_of(rel.coeff.begin(), rel.coeff.end(), [](int c) { return c == 0; }))
                cur.fail("angle relation with no terms");
            current->angle_relations.push_back(rel);
        } else if (kw == "edge") {
            // equality chain: a = b = c
            std::vector<int> cls;
            std::string part;
            std::istringstream es(rest);
            while (std::getline(es, part, '=')) {
                part = strip(part);
                if (part.size() != 1) cur.fail("edge class member '" + part + "' must be a single label");
                try {
                    cls.push_back(parse_edge_label(part[0]));
                } catch (const std::invalid_argument&) {
                    cur.fail("unknown edge label '" + part + "'");
                }
            }
            if (cls.size() < 2) cur.fail("edge class needs at least two members");
            std::vector<int> sorted = cls;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                cur.fail("edge class repeats a label");
            current->edge_classes.push_back(cls);
        } else if (kw == "edge-relation") {
            auto eq = rest.find('=');
            if (eq == std::string::npos) cur.fail("edge relation needs '='");
            EdgeRelation rel;
            parse_combo(strip(rest.substr(0, eq)), false, +1, rel.coeff, cur);
            parse_combo(strip(rest.substr(eq + 1)), false, -1, rel.coeff, cur);
            if (std::all_of(rel.coeff.begin(), rel.coeff.end(), [](int c) { return c == 0; }))
                cur.fail("trivial edge relation");
            current->edge_relations.push_back(rel);
        } else {
            cur.fail("unknown keyword '" + kw + "'");
        }
    }

    if (!any_content) { cur.line_no = 1; cur.fail("empty type table"); }

    // per-row sanity
    for (const auto& def : table) {
        if (def.angle_relations.empty() && def.edge_classes.empty() && def.edge_relations.empty())
            throw TableError(origin + ": type " + def.name + " has no relations");
    }
    return table;
}

std::vector<TypeDefinition> load_type_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableError("cannot open type table: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    auto table = parse_type_table(buf.str(), path);
    const auto e2e = std::count_if(table.begin(), table.end(),
                                   [](const TypeDefinition& d) { return d.edge_to_edge; });
    if (e2e != 8)
        throw TableError(path + ": expected exactly 8 edge-to-edge types, found " +
                         std::to_string(e2e));
    return table;
}

namespace {

void apply_relabeling(const Relabeling& sigma, const AngleVector& a, const EdgeVector& e,
                      AngleVector& a_out, EdgeVector& e_out) {
    for (int v = 0; v < 5; ++v) a_out.deg(sigma.map_vertex(v)) = a.deg(v);
    for (int i = 0; i < 5; ++i) e_out.len(sigma.map_edge(i)) = e.len(i);
}

struct RowEvaluation {
    double worst = 0.0;         // max residual in tolerance units
    std::string worst_relation;
};

RowEvaluation evaluate_row(const TypeDefinition& def, const AngleVector& a, const EdgeVector& e,
                           const Tolerances& tol) {
    RowEvaluation ev;
    const double edge_scale = e.len.maxCoeff();
    const double len_tol = tol.len_tol_rel * edge_scale;
    for (const auto& rel : def.angle_relations) {
        const double r = std::abs(rel.evaluate(a)) / tol.angle_tol_deg;
        if (r > ev.worst) { ev.worst = r; ev.worst_relation = rel.str(); }
    }
    for (const auto& rel : def.equality_relations()) {
        const double r = std::abs(rel.evaluate(e)) / len_tol;
        if (r > ev.worst) { ev.worst = r; ev.worst_relation = rel.str(); }
    }
    return ev;
}

}  // namespace

ClassificationResult classify(const AngleVector& angles, const EdgeVector& edges,
                              const std::vector<TypeDefinition>& table, const Tolerances& tol,
                              const ClassifyOptions& opts) {
    ClassificationResult out;
    std::vector<Relabeling> sigmas;
    if (opts.up_to_relabeling) {
        auto all = all_relabelings();
        sigmas.assign(all.begin(), all.end());
    } else {
        sigmas.push_back(all_relabelings()[0]);
    }

    for (const auto& def : table) {
        if (!def.edge_to_edge && !opts.include_non_edge_to_edge) continue;
        double best = std::numeric_limits<double>::infinity();
        std::string best_relation;
        const Relabeling* best_sigma = nullptr;
        for (const auto& sigma : sigmas) {
            AngleVector a;
            EdgeVector e;
            apply_relabeling(sigma, angles, edges, a, e);
            const auto ev = evaluate_row(def, a, e, tol);
            if (ev.worst < best) {
                best = ev.worst;
                best_relation = ev.worst_relation;
                best_sigma = &sigma;
            }
        }
        if (best <= 1.0) {
            out.types.insert(def.name);
            out.matches.push_back({def.name, *best_sigma});
        } else if (opts.report_near_misses && best < 10.0) {
            out.near_misses.push_back({def.name, best_relation, best});
        }
    }
    return out;
}

std::vector<LabelTriple> all_label_triples() {
    std::vector<LabelTriple> out;
    for (int i = 0; i < 5; ++i)
        for (int j = i; j < 5; ++j)
            for (int k = j; k < 5; ++k) out.push_back({i, j, k});
    return out;
}

TentativeNodeProfile tentative_3valent_profile(const AngleVector& angles, const Tolerances& tol) {
    TentativeNodeProfile p;
    for (const auto& t : all_label_triples()) {
        const double sum = angles.deg(t[0]) + angles.deg(t[1]) + angles.deg(t[2]);
        if (std::abs(sum - 360.0) <= tol.angle_tol_deg) {
            for (int v : {t[0], t[1], t[2]}) {
                auto& list = p.triples_at[v];
                if (list.empty() || list.back() != t) list.push_back(t);
            }
        }
    }
    for (int v = 0; v < 5; ++v)
        if (!p.triples_at[v].empty()) ++p.qualifying_vertices;
    return p;
}

}  // namespace pentile

#include "pentile/certify.hpp"
#include "pentile/conditions.hpp"
#include "pentile/grow.hpp"
#include "pentile/pent_format.hpp"
#include "pentile/report.hpp"
#include "pentile/solve_family.hpp"
#include "pentile/sort.hpp"
#include "pentile/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace pentile;

// Exit codes (stable contract, see README):
//   0 success / reached-target-depth
//   1 I/O or unexpected failure
//   2 input parse or validation error
//   3 tile: search exhausted
//   4 tile: placement budget exceeded
//   5 certify: a pipeline stage failed / verify-certificate: checks failed
//   6 falsification event (theorem-backed invariant failed on a valid torus)
namespace exit_code {
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kParse = 2;
constexpr int kExhausted = 3;
constexpr int kBudget = 4;
constexpr int kStageFailed = 5;
constexpr int kFalsification = 6;
}  // namespace exit_code

namespace {

struct GlobalConfig {
    std::string table_path;
    double tol_angle = Tolerances{}.angle_tol_deg;
    double tol_len = Tolerances{}.len_tol_rel;
    unsigned seed = 20150731;
    int workers = 1;
    std::string config_file;

    Tolerances tol() const { return Tolerances{tol_angle, tol_len}; }
};

std::string default_table_path() {
    if (const char* env = std::getenv("PENTILE_TABLE")) return env;
    return "data/type_table.txt";
}

int env_workers() {
    if (const char* env = std::getenv("PENTILE_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void write_json(const std::string& path, const Json& j) {
    write_text(path, dump_deterministic(j) + "\n");
}

// --config file overrides flags; keys mirror the flag names
void apply_config_file(GlobalConfig& g) {
    if (g.config_file.empty()) return;
    std::ifstream in(g.config_file);
    if (!in) throw std::runtime_error("cannot open config file " + g.config_file);
    Json j = Json::parse(in);
    if (j.contains("table")) g.table_path = j["table"].get<std::string>();
    if (j.contains("tol_angle")) g.tol_angle = j["tol_angle"].get<double>();
    if (j.contains("tol_len")) g.tol_len = j["tol_len"].get<double>();
    if (j.contains("seed")) g.seed = j["seed"].get<unsigned>();
    if (j.contains("workers")) g.workers = j["workers"].get<int>();
}

Json config_json(const GlobalConfig& g) {
    return Json{{"table", g.table_path},
                {"tolerances", tolerances_json(g.tol())},
                {"seed", g.seed},
                {"workers", g.workers}};
}

EdgeRelation parse_edge_relation_text(const std::string& text) {
    // "a=c" or "e=2b+d" or "2a=d"
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw std::runtime_error("edge condition needs '='");
    EdgeRelation rel;
    auto parse_side = [&](const std::string& side, int sign) {
        int mult = 0;
        bool have_term = false;
        for (char ch : side) {
            if (ch == ' ' || ch == '\t') continue;
            if (ch == '+') {
                mult = 0;
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                mult = mult * 10 + (ch - '0');
                continue;
            }
            const int idx = parse_edge_label(ch);
            rel.coeff[idx] += sign * (mult == 0 ? 1 : mult);
            mult = 0;
            have_term = true;
        }
        if (!have_term) throw std::runtime_error("empty side in edge condition");
    };
    parse_side(text.substr(0, eq), +1);
    parse_side(text.substr(eq + 1), -1);
    return rel;
}

int run_enumerate(const GlobalConfig& g, bool no_dedup, bool include_constant,
                  const std::string& out_path) {
    EnumerationRules rules;
    rules.deduplicate = !no_dedup;
    rules.include_constant_conditions = include_constant;
    const auto patterns = enumerate_candidate_patterns(rules);
    Json j = patterns_json(patterns, rules.deduplicate);
    j["config"] = config_json(g);
    write_json(out_path, j);
    std::cerr << "patterns: " << patterns.size() << (rules.deduplicate ? "" : " (raw)") << "\n";
    return exit_code::kOk;
}

int run_classify(const GlobalConfig& g, const std::string& spec_path,
                 const std::string& out_path, bool fixed_labeling) {
    const auto table = load_type_table(g.table_path);
    const auto specs = load_pentagons(spec_path);
    Json j;
    j["meta"] = meta_json();
    j["config"] = config_json(g);
    auto& list = j["pentagons"] = Json::array();
    for (const auto& spec : specs) {
        Json pj;
        pj["name"] = spec.name;
        pj["pentagon"] = pentagon_json(spec.angles, spec.edges);
        ClassifyOptions copts;
        copts.up_to_relabeling = !fixed_labeling;
        const auto result = classify(spec.angles, spec.edges, table, g.tol(), copts);
        pj["types"] = Json::array();
        for (const auto& t : result.types) pj["types"].push_back(t);
        auto& nm = pj["near_misses"] = Json::array();
        for (const auto& miss : result.near_misses)
            nm.push_back(Json{{"type", miss.name},
                              {"relation", miss.relation},
                              {"residual_tolerance_units", miss.residual}});
        if (spec.expected_type)
            pj["expected_type_matched"] = result.types.count(*spec.expected_type) > 0;
        list.push_back(std::move(pj));
    }
    write_json(out_path, j);
    return exit_code::kOk;
}

int run_solve(const GlobalConfig& g, int type_number, const std::string& conditions,
              int samples, const std::string& out_path) {
    ConstraintSet cs;
    std::string label;
    if (type_number > 0) {
        const auto table = load_type_table(g.table_path);
        const std::string name = std::to_string(type_number);
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const TypeDefinition& d) { return d.name == name; });
        if (it == table.end()) throw std::runtime_error("no such type in table: " + name);
        cs = ConstraintSet::from_type(*it);
        label = "type " + name;
    } else {
        // conditions like "AAB;ACD": sum-to-360 multisets
        std::vector<LabelTriple> triples;
        std::string cur;
        for (char ch : conditions + ";") {
            if (ch == ';') {
                if (cur.size() != 3) throw std::runtime_error("condition must have 3 labels");
                LabelTriple t{parse_vertex_label(cur[0]), parse_vertex_label(cur[1]),
                              parse_vertex_label(cur[2])};
                std::sort(t.begin(), t.end());
                triples.push_back(t);
                cur.clear();
            } else if (!isspace(static_cast<unsigned char>(ch))) {
                cur += ch;
            }
        }
        if (triples.empty()) throw std::runtime_error("solve needs --type or --conditions");
        for (const auto& t : triples) cs.add_condition(AngleCondition{t, t[0]});
        label = conditions;
    }
    SolveOptions sopts;
    sopts.max_samples = samples;
    sopts.seed = g.seed;
    sopts.tol = g.tol();
    const auto result = solve_family(cs, sopts);

    Json j;
    j["meta"] = meta_json();
    j["config"] = config_json(g);
    j["system"] = label;
    j["angles_feasible"] = result.angles_feasible;
    j["angle_dim"] = result.angle_dim;
    j["edge_dim"] = result.edge_dim;
    if (result.infeasibility) j["certificate"] = farkas_json(*result.infeasibility);
    auto& samples_json = j["samples"] = Json::array();
    for (const auto& s : result.samples) samples_json.push_back(pentagon_json(s.angles, s.edges));
    write_json(out_path, j);
    return exit_code::kOk;
}

int run_tile(const GlobalConfig& g, const std::string& spec_path, int depth, long long budget,
             bool no_reflections, bool corollary1, const std::string& out_path,
             const std::string& svg_path, const std::string& seed_conditions) {
    const auto specs = load_pentagons(spec_path);
    const auto& spec = specs.front();
    const auto shape = build_pentagon(spec.angles, spec.edges, g.tol());
    Patch patch(shape, g.tol());
    patch.place_seed();

    if (!seed_conditions.empty()) {
        // "A:ABD,B:ABC" attaches node conditions at seed vertices
        std::istringstream in(seed_conditions);
        std::string item;
        while (std::getline(in, item, ',')) {
            if (item.size() != 5 || item[1] != ':')
                throw std::runtime_error("seed condition must look like V:XYZ");
            const int v = parse_vertex_label(item[0]);
            LabelTriple t{parse_vertex_label(item[2]), parse_vertex_label(item[3]),
                          parse_vertex_label(item[4])};
            std::sort(t.begin(), t.end());
            patch.annotate_seed_node(v, NodeConstraint{t});
        }
    }

    GrowLimits limits;
    limits.target_depth = depth;
    limits.max_placements = budget;
    limits.allow_reflections = !no_reflections;
    limits.corollary1_prune = corollary1;
    const GrowResult r = grow(patch, limits);

    Json j = patch_json(patch, &r);
    j["config"] = config_json(g);
    j["pentagon_name"] = spec.name;
    write_json(out_path, j);
    if (!svg_path.empty()) write_text(svg_path, render_svg(patch, {800.0, true, false}));
    std::cerr << "tile: " << to_string(r.outcome) << ", tiles=" << patch.tile_count()
              << ", placements=" << r.stats.placements_tried << "\n";
    switch (r.outcome) {
        case GrowOutcome::ReachedTargetDepth: return exit_code::kOk;
        case GrowOutcome::Exhausted: return exit_code::kExhausted;
        case GrowOutcome::BudgetExceeded: return exit_code::kBudget;
    }
    return exit_code::kError;
}

int run_certify(const GlobalConfig& g, const std::string& spec_path, int type_number, int depth,
                int max_depth, long long budget, bool no_reflections, bool corollary1,
                const std::string& out_path, const std::string& svg_path) {
    std::vector<std::pair<AngleVector, EdgeVector>> candidates;
    std::string name;
    if (!spec_path.empty()) {
        const auto specs = load_pentagons(spec_path);
        candidates.push_back({specs.front().angles, specs.front().edges});
        name = specs.front().name;
    } else if (type_number > 0) {
        const auto table = load_type_table(g.table_path);
        const std::string tname = std::to_string(type_number);
        auto it = std::find_if(table.begin(), table.end(),
                               [&](const TypeDefinition& d) { return d.name == tname; });
        if (it == table.end()) throw std::runtime_error("no such type: " + tname);
        SolveOptions sopts;
        sopts.tol = g.tol();
        sopts.seed = g.seed;
        sopts.max_samples = 8;
        const auto fam = solve_family(ConstraintSet::from_type(*it), sopts);
        if (fam.samples.empty()) throw std::runtime_error("type " + tname + " row has no sample");
        for (const auto& s : fam.samples) candidates.push_back({s.angles, s.edges});
        name = "type-" + tname + "-sample";
    } else {
        throw std::runtime_error("certify needs a spec file or --type");
    }

    CertifyOptions copts;
    copts.depth = depth;
    copts.max_depth = max_depth;
    copts.budget = budget;
    copts.allow_reflections = !no_reflections;
    copts.corollary1_prune = corollary1;
    copts.tol = g.tol();

    // with --type, try solved samples in order until one certifies
    CertifyOutcome outcome;
    AngleVector angles;
    EdgeVector edges;
    for (size_t i = 0; i < candidates.size(); ++i) {
        angles = candidates[i].first;
        edges = candidates[i].second;
        outcome = certify_pentagon(angles, edges, copts);
        if (outcome.ok()) break;
        if (i + 1 < candidates.size())
            std::cerr << "sample " << i << " failed at " << to_string(outcome.stage)
                      << "; trying next sample\n";
    }

    Json j;
    if (outcome.ok()) {
        Json cfg = config_json(g);
        cfg["depth"] = outcome.used_depth;
        cfg["budget"] = budget;
        j = certificate_json(*outcome.torus, *outcome.density, outcome.bagina_tile,
                             outcome.lemma1_witness, cfg);
        j["pentagon_name"] = name;
        j["grow"] = Json{{"placements_tried", outcome.grow_result.stats.placements_tried},
                         {"peak_tiles", outcome.grow_result.stats.peak_tiles}};
        write_json(out_path, j);
        if (!svg_path.empty() && outcome.patch)
            write_text(svg_path, render_svg(*outcome.patch, {800.0, true, false}));
        std::cerr << "certificate: " << outcome.torus->tiles.size() << " tiles per cell, depth "
                  << outcome.used_depth << "\n";
        return exit_code::kOk;
    }
    j["meta"] = meta_json();
    j["config"] = config_json(g);
    j["pentagon_name"] = name;
    j["failed_stage"] = to_string(outcome.stage);
    j["message"] = outcome.message;
    j["grow"] = Json{{"outcome", to_string(outcome.grow_result.outcome)},
                     {"placements_tried", outcome.grow_result.stats.placements_tried}};
    write_json(out_path, j);
    if (!svg_path.empty() && outcome.patch)
        write_text(svg_path, render_svg(*outcome.patch, {800.0, true, false}));
    std::cerr << "certify failed at stage " << to_string(outcome.stage) << ": "
              << outcome.message << "\n";
    return exit_code::kStageFailed;
}

int run_sort(const GlobalConfig& g, int ring_budget, int samples, long long placements,
             bool corollary1, bool no_reflections, const std::string& out_path) {
    const auto table = load_type_table(g.table_path);
    const auto patterns = enumerate_candidate_patterns({});
    SortOptions opts;
    opts.ring_budget = ring_budget;
    opts.samples_per_dim = samples;
    opts.placements_budget = placements;
    opts.corollary1_prune = corollary1;
    opts.allow_reflections = !no_reflections;
    opts.seed = g.seed;
    opts.workers = g.workers;
    opts.tol = g.tol();
    const auto report = first_stage_sort(patterns, table, opts);
    write_json(out_path, sort_report_json(report, opts));
    std::cerr << "sort: total=" << report.total << " infeasible=" << report.infeasible
              << " non-edge-to-edge=" << report.non_edge_to_edge
              << " matches-type=" << report.matches_type << " uncertain=" << report.uncertain
              << "\n";
    return exit_code::kOk;
}

int run_refine(const GlobalConfig& g, int pattern_id, const std::string& edge_condition,
               bool all, int ring_budget, long long placements, const std::string& out_path) {
    const auto table = load_type_table(g.table_path);
    const auto patterns = enumerate_candidate_patterns({});
    if (pattern_id < 0 || pattern_id >= static_cast<int>(patterns.size()))
        throw std::runtime_error("pattern id out of range");
    const auto& pattern = patterns[static_cast<size_t>(pattern_id)];

    SortOptions opts;
    opts.ring_budget = ring_budget;
    opts.placements_budget = placements;
    opts.seed = g.seed;
    opts.tol = g.tol();

    Json j;
    j["meta"] = meta_json();
    j["config"] = config_json(g);
    j["pattern"] = Json{{"id", pattern.id}, {"v1", pattern.v1.str()}, {"v2", pattern.v2.str()}};
    auto& list = j["refinements"] = Json::array();

    auto outcome_json = [](const PatternOutcome& o) {
        Json oj;
        oj["disposition"] = to_string(o.disposition);
        oj["reason"] = o.reason;
        if (!o.matched_types.empty()) oj["matched_types"] = o.matched_types;
        return oj;
    };

    if (all) {
        for (const auto& [name, outcome] : refine_by_edge_conditions(pattern, table, opts)) {
            Json rj = outcome_json(outcome);
            rj["hypothesis"] = name;
            list.push_back(std::move(rj));
        }
    } else {
        if (edge_condition.empty())
            throw std::runtime_error("refine needs --edge-condition or --all");
        ConstraintSet extra;
        extra.edge_relations.push_back(parse_edge_relation_text(edge_condition));
        Json rj = outcome_json(sort_one(pattern, table, opts, &extra));
        rj["hypothesis"] = edge_condition;
        list.push_back(std::move(rj));
    }
    write_json(out_path, j);
    return exit_code::kOk;
}

int run_render(const std::string& dump_path, const std::string& out_path, bool markers) {
    std::ifstream in(dump_path);
    if (!in) throw std::runtime_error("cannot open " + dump_path);
    const Json j = Json::parse(in);

    AngleVector angles;
    EdgeVector edges;
    for (int i = 0; i < 5; ++i) {
        angles.deg(i) = j.at("prototile").at("angles_deg").at(static_cast<size_t>(i)).get<double>();
        edges.len(i) = j.at("prototile").at("edges").at(static_cast<size_t>(i)).get<double>();
    }
    const auto proto = build_pentagon(angles, edges);

    std::vector<PlacedTile> tiles;
    for (const auto& tj : j.at("tiles")) {
        PlacedTile t;
        t.pose.rotation_deg = tj.at("pose").at("rotation_deg").get<double>();
        t.pose.translation = Vec2(tj.at("pose").at("tx").get<double>(),
                                  tj.at("pose").at("ty").get<double>());
        t.pose.mirrored = tj.at("pose").at("mirrored").get<bool>();
        t.mirrored = t.pose.mirrored;
        for (int i = 0; i < 5; ++i)
            t.corner[static_cast<size_t>(i)] = t.pose.apply(proto.vertex(i));
        tiles.push_back(t);
    }
    std::vector<NodeRecord> nodes;
    if (j.contains("nodes")) {
        for (const auto& nj : j.at("nodes")) {
            NodeRecord n;
            n.pos = Vec2(nj.at("x").get<double>(), nj.at("y").get<double>());
            n.angle_sum = nj.at("angle_sum_deg").get<double>();
            n.corners.resize(static_cast<size_t>(nj.at("valence").get<int>()));
            nodes.push_back(n);
        }
    }
    write_text(out_path, render_svg(proto, tiles, nodes, {800.0, markers, false}));
    return exit_code::kOk;
}

int run_verify(const std::string& cert_path) {
    std::ifstream in(cert_path);
    if (!in) throw std::runtime_error("cannot open " + cert_path);
    const Json j = Json::parse(in);
    const auto vr = verify_certificate(j);
    for (const auto& line : vr.checks) std::cout << line << "\n";
    std::cout << (vr.ok ? "certificate OK" : "certificate INVALID") << "\n";
    return vr.ok ? exit_code::kOk : exit_code::kStageFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pentile: convex pentagon edge-to-edge tiling toolkit"};
    app.require_subcommand(1);

    GlobalConfig g;
    g.table_path = default_table_path();
    g.workers = env_workers();
    app.add_option("--table", g.table_path, "type table file");
    app.add_option("--tol-angle", g.tol_angle, "angle tolerance, degrees");
    app.add_option("--tol-len", g.tol_len, "relative length tolerance");
    app.add_option("--seed", g.seed, "sampling seed");
    app.add_option("--workers", g.workers, "worker threads (or PENTILE_WORKERS)");
    app.add_option("--config", g.config_file, "JSON config file overriding flags");

    auto* cmd_enum = app.add_subcommand("enumerate", "emit the canonical candidate patterns");
    bool no_dedup = false, include_constant = false;
    std::string enum_out = "-";
    cmd_enum->add_flag("--no-dedup", no_dedup, "raw anchored pairs, no canonicalization");
    cmd_enum->add_flag("--include-constant-conditions", include_constant,
                       "also pair the five constant conditions");
    cmd_enum->add_option("-o,--out", enum_out, "output JSON path");

    auto* cmd_classify = app.add_subcommand("classify", "classify pentagons against the table");
    std::string classify_spec, classify_out = "-";
    bool fixed_labeling = false;
    cmd_classify->add_option("spec", classify_spec, "pentagon spec file")->required();
    cmd_classify->add_option("-o,--out", classify_out, "output JSON path");
    cmd_classify->add_flag("--fixed-labeling", fixed_labeling,
                           "match rows only under the given labeling");

    auto* cmd_solve = app.add_subcommand("solve", "solve a constraint family and sample it");
    int solve_type = 0, solve_samples = 8;
    std::string solve_conditions, solve_out = "-";
    cmd_solve->add_option("--type", solve_type, "table row to solve");
    cmd_solve->add_option("--conditions", solve_conditions,
                          "semicolon-separated 3-label node conditions, e.g. AAB;ACD");
    cmd_solve->add_option("--samples", solve_samples, "max samples");
    cmd_solve->add_option("-o,--out", solve_out, "output JSON path");

    auto* cmd_tile = app.add_subcommand("tile", "grow an edge-to-edge patch");
    std::string tile_spec, tile_out = "-", tile_svg, tile_seed_conditions;
    int tile_depth = 2;
    long long tile_budget = 1'000'000;
    bool tile_norefl = false, tile_cor1 = false;
    cmd_tile->add_option("spec", tile_spec, "pentagon spec file")->required();
    cmd_tile->add_option("--depth", tile_depth, "target ring depth");
    cmd_tile->add_option("--budget", tile_budget, "max placements tried");
    cmd_tile->add_flag("--no-reflections", tile_norefl, "forbid mirrored copies");
    cmd_tile->add_flag("--corollary1-prune", tile_cor1, "forbid nodes of valence 5 or more");
    cmd_tile->add_option("-o,--out", tile_out, "patch dump JSON path");
    cmd_tile->add_option("--svg", tile_svg, "also render an SVG");
    cmd_tile->add_option("--seed-conditions", tile_seed_conditions,
                         "node conditions at seed vertices, e.g. A:ABD,B:ABC");

    auto* cmd_cert = app.add_subcommand("certify", "grow, detect periods, build the torus");
    std::string cert_spec, cert_out = "-", cert_svg;
    int cert_type = 0, cert_depth = 3, cert_max_depth = 5;
    long long cert_budget = 1'000'000;
    bool cert_norefl = false, cert_cor1 = false;
    cmd_cert->add_option("spec", cert_spec, "pentagon spec file");
    cmd_cert->add_option("--type", cert_type, "certify a solved sample of this table row");
    cmd_cert->add_option("--depth", cert_depth, "initial ring depth");
    cmd_cert->add_option("--max-depth", cert_max_depth, "deepen up to this depth");
    cmd_cert->add_option("--budget", cert_budget, "max placements per grow");
    cmd_cert->add_flag("--no-reflections", cert_norefl, "forbid mirrored copies");
    cmd_cert->add_flag("--corollary1-prune", cert_cor1, "forbid nodes of valence 5 or more");
    cmd_cert->add_option("-o,--out", cert_out, "certificate JSON path");
    cmd_cert->add_option("--svg", cert_svg, "render the certified patch");

    auto* cmd_sort = app.add_subcommand("sort", "first-stage sorting of the candidate patterns");
    int sort_budget = 2, sort_samples = 5;
    long long sort_placements = 5000;
    bool sort_cor1 = false, sort_norefl = false;
    std::string sort_out = "-";
    cmd_sort->add_option("--budget", sort_budget, "ring depth for bounded search evidence");
    cmd_sort->add_option("--samples", sort_samples, "samples per free dimension");
    cmd_sort->add_option("--placements", sort_placements, "placement budget per grow");
    cmd_sort->add_flag("--corollary1-prune", sort_cor1, "prune nodes of valence 5 or more");
    cmd_sort->add_flag("--no-reflections", sort_norefl, "forbid mirrored copies");
    cmd_sort->add_option("-o,--out", sort_out, "report JSON path");

    auto* cmd_refine = app.add_subcommand("refine", "split a pattern by extra edge conditions");
    int refine_id = -1, refine_rings = 2;
    long long refine_placements = 5000;
    std::string refine_cond, refine_out = "-";
    bool refine_all = false;
    cmd_refine->add_option("pattern-id", refine_id, "pattern id from enumerate")->required();
    cmd_refine->add_option("--edge-condition", refine_cond, "hypothesis, e.g. a=c or e=2b+d");
    cmd_refine->add_flag("--all", refine_all, "try every pairwise edge equality");
    cmd_refine->add_option("--budget", refine_rings, "ring depth");
    cmd_refine->add_option("--placements", refine_placements, "placement budget per grow");
    cmd_refine->add_option("-o,--out", refine_out, "output JSON path");

    auto* cmd_render = app.add_subcommand("render", "render a patch dump to SVG");
    std::string render_in, render_out = "-";
    bool render_nodes = false;
    cmd_render->add_option("dump", render_in, "patch dump JSON")->required();
    cmd_render->add_option("-o,--out", render_out, "SVG output path");
    cmd_render->add_flag("--nodes", render_nodes, "draw node valence markers");

    auto* cmd_verify = app.add_subcommand("verify-certificate",
                                          "independently re-check a certificate");
    std::string verify_in;
    cmd_verify->add_option("certificate", verify_in, "certificate JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(g);
        if (cmd_enum->parsed())
            return run_enumerate(g, no_dedup, include_constant, enum_out);
        if (cmd_classify->parsed())
            return run_classify(g, classify_spec, classify_out, fixed_labeling);
        if (cmd_solve->parsed())
            return run_solve(g, solve_type, solve_conditions, solve_samples, solve_out);
        if (cmd_tile->parsed())
            return run_tile(g, tile_spec, tile_depth, tile_budget, tile_norefl, tile_cor1,
                            tile_out, tile_svg, tile_seed_conditions);
        if (cmd_cert->parsed())
            return run_certify(g, cert_spec, cert_type, cert_depth, cert_max_depth, cert_budget,
                               cert_norefl, cert_cor1, cert_out, cert_svg);
        if (cmd_sort->parsed())
            return run_sort(g, sort_budget, sort_samples, sort_placements, sort_cor1, sort_norefl,
                            sort_out);
        if (cmd_refine->parsed())
            return run_refine(g, refine_id, refine_cond, refine_all, refine_rings,
                              refine_placements, refine_out);
        if (cmd_render->parsed()) return run_render(render_in, render_out, render_nodes);
        if (cmd_verify->parsed()) return run_verify(verify_in);
    } catch (const FalsificationError& err) {
        std::cerr << "FALSIFICATION EVENT: " << err.what() << "\n"
                  << "This contradicts a theorem-backed invariant; aborting.\n";
        return exit_code::kFalsification;
    } catch (const TableError& err) {
        std::cerr << "type table error: " << err.what() << "\n";
        return exit_code::kParse;
    } catch (const SpecParseError& err) {
        std::cerr << "spec error: " << err.what() << "\n";
        return exit_code::kParse;
    } catch (const GeometryError& err) {
        std::cerr << "geometry error: " << err.what() << "\n";
        return exit_code::kParse;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return exit_code::kError;
    }
    return exit_code::kError;
}

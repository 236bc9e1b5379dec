#include "pentile/report.hpp"

#include <chrono>
#include <cmath>

namespace pentile {

Json meta_json() {
    Json meta;
    meta["generator"] = "pentile";
    meta["timestamp"] = static_cast<long long>(
        std::chrono::duration_cast<std::chrono::seconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
    return meta;
}

Json tolerances_json(const Tolerances& tol) {
    return Json{{"angle_tol_deg", tol.angle_tol_deg}, {"len_tol_rel", tol.len_tol_rel}};
}

Json farkas_json(const FarkasCertificate& cert) {
    Json eq = Json::array(), in = Json::array();
    for (const auto& m : cert.eq_mult) eq.push_back(m.str());
    for (const auto& m : cert.ineq_mult) in.push_back(m.str());
    Json j;
    j["equality_multipliers"] = std::move(eq);
    j["inequality_multipliers"] = std::move(in);
    return j;
}

Json pentagon_json(const AngleVector& angles, const EdgeVector& edges) {
    Json a = Json::array(), e = Json::array();
    for (int i = 0; i < 5; ++i) {
        a.push_back(angles.deg(i));
        e.push_back(edges.len(i));
    }
    Json j;
    j["angles_deg"] = std::move(a);
    j["edges"] = std::move(e);
    return j;
}

Json patterns_json(const std::vector<CandidatePattern>& patterns, bool deduplicated) {
    Json j;
    j["meta"] = meta_json();
    j["deduplicated"] = deduplicated;
    j["count"] = patterns.size();
    Json list = Json::array();
    for (const auto& p : patterns) {
        Json pj;
        pj["id"] = p.id;
        pj["key"] = p.key();
        pj["v1"] = p.v1.str();
        pj["v2"] = p.v2.str();
        Json fe = Json::array();
        for (const auto& [a, b] : p.forced_edge_equalities)
            fe.push_back(std::string(1, edge_name(a)) + "=" + edge_name(b));
        pj["forced_edge_equalities"] = std::move(fe);
        list.push_back(std::move(pj));
    }
    j["patterns"] = std::move(list);
    return j;
}

Json sort_report_json(const SortReport& report, const SortOptions& opts) {
    Json j;
    j["meta"] = meta_json();
    j["config"] = Json{{"ring_budget", opts.ring_budget},
                       {"placements_budget", opts.placements_budget},
                       {"samples_per_dim", opts.samples_per_dim},
                       {"max_samples", opts.max_samples},
                       {"grow_samples", opts.grow_samples},
                       {"corollary1_prune", opts.corollary1_prune},
                       {"allow_reflections", opts.allow_reflections},
                       {"seed", opts.seed},
                       {"workers", opts.workers},
                       {"tolerances", tolerances_json(opts.tol)}};
    j["buckets"] = Json{{"total", report.total},
                        {"infeasible_geometry", report.infeasible},
                        {"non_edge_to_edge", report.non_edge_to_edge},
                        {"matches_type", report.matches_type},
                        {"uncertain", report.uncertain}};
    Json list = Json::array();
    for (const auto& o : report.outcomes) {
        Json oj;
        oj["id"] = o.pattern_id;
        oj["key"] = o.pattern_key;
        oj["disposition"] = to_string(o.disposition);
        oj["reason"] = o.reason;
        if (!o.matched_types.empty()) oj["matched_types"] = o.matched_types;
        if (o.farkas) {
            oj["certificate"] = farkas_json(*o.farkas);
            oj["certificate_rechecked"] = o.farkas_rechecked;
        }
        oj["angle_dim"] = o.angle_dim;
        oj["samples_realized"] = o.samples_realized;
        oj["samples_reached_depth"] = o.samples_reached_depth;
        oj["samples_exhausted"] = o.samples_exhausted;
        oj["samples_budget"] = o.samples_budget;
        oj["placements_tried"] = o.placements_tried;
        oj["wall_ms"] = o.wall_ms;
        list.push_back(std::move(oj));
    }
    j["patterns"] = std::move(list);
    return j;
}

namespace {

Json pose_json(const Congruence& pose) {
    return Json{{"rotation_deg", pose.rotation_deg},
                {"tx", pose.translation.x()},
                {"ty", pose.translation.y()},
                {"mirrored", pose.mirrored}};
}

Congruence pose_from_json(const Json& j) {
    Congruence pose;
    pose.rotation_deg = j.at("rotation_deg").get<double>();
    pose.translation = Vec2(j.at("tx").get<double>(), j.at("ty").get<double>());
    pose.mirrored = j.at("mirrored").get<bool>();
    return pose;
}

}  // namespace

Json patch_json(const Patch& patch, const GrowResult* grow_result) {
    Json j;
    j["meta"] = meta_json();
    j["tolerances"] = tolerances_json(patch.tolerances());
    j["prototile"] = pentagon_json(patch.prototile().angles, patch.prototile().edges);
    Json tiles = Json::array();
    for (int i = 0; i < patch.tile_count(); ++i) {
        const auto& t = patch.tile(i);
        Json tj;
        tj["id"] = i;
        tj["pose"] = pose_json(t.pose);
        tj["ring"] = t.ring;
        Json cn = Json::array();
        for (int l = 0; l < 5; ++l) cn.push_back(t.corner_node[static_cast<size_t>(l)]);
        tj["corner_nodes"] = std::move(cn);
        tiles.push_back(std::move(tj));
    }
    j["tiles"] = std::move(tiles);
    Json nodes = Json::array();
    for (int n = 0; n < patch.node_count(); ++n) {
        const auto& node = patch.node(n);
        Json nj;
        nj["id"] = n;
        nj["x"] = node.pos.x();
        nj["y"] = node.pos.y();
        nj["angle_sum_deg"] = node.angle_sum;
        nj["closed"] = node.closed(patch.tolerances().angle_tol_deg);
        nj["valence"] = node.valence();
        nodes.push_back(std::move(nj));
    }
    j["nodes"] = std::move(nodes);
    Json open = Json::array();
    for (const auto& e : patch.open_edges())
        open.push_back(Json{{"tile", e.tile}, {"slot", e.slot}});
    j["open_edges"] = std::move(open);
    if (grow_result) {
        j["grow"] = Json{{"outcome", to_string(grow_result->outcome)},
                         {"placements_tried", grow_result->stats.placements_tried},
                         {"backtracks", grow_result->stats.backtracks},
                         {"peak_tiles", grow_result->stats.peak_tiles},
                         {"peak_ring", grow_result->stats.peak_ring}};
    }
    return j;
}

Json certificate_json(const TorusTiling& torus, const DensityReport& density, int bagina_tile,
                      const std::optional<int>& lemma1_witness, const Json& config) {
    Json j;
    j["meta"] = meta_json();
    j["config"] = config;
    j["tolerances"] = tolerances_json(torus.tol);
    j["prototile"] = pentagon_json(torus.prototile.angles, torus.prototile.edges);
    j["lattice"] = Json{{"t1", {torus.lattice.t1.x(), torus.lattice.t1.y()}},
                        {"t2", {torus.lattice.t2.x(), torus.lattice.t2.y()}},
                        {"det", torus.lattice.det()}};
    j["tiles_per_cell"] = torus.tiles.size();
    Json tiles = Json::array();
    for (const auto& t : torus.tiles) tiles.push_back(pose_json(t.pose));
    j["tiles"] = std::move(tiles);
    Json census;
    for (const auto& [k, c] : density.node_counts) census[std::to_string(k)] = c;
    j["node_census"] = census;
    Json dens;
    for (const auto& [k, d] : density.density) dens[std::to_string(k)] = d.str();
    j["density"] = dens;
    j["corner_identity"] = density.corner_identity_lhs().str();
    j["checks"] = Json{{"area_identity", true},
                       {"all_edges_mated", true},
                       {"all_nodes_closed", true},
                       {"bagina_witness_tile", bagina_tile},
                       {"lemma1", lemma1_witness ? Json(*lemma1_witness) : Json("vacuous")},
                       {"corner_identity_equals_5", density.corner_identity_lhs() == Rational(5)}};
    return j;
}

namespace {

struct TorusGeometry {
    PentagonShape proto;
    Vec2 t1, t2;
    Mat2 L, Linv;
    std::vector<std::array<Vec2, 5>> corners;

    Vec2 wrap_frac(const Vec2& p) const {
        Vec2 c = Linv * p;
        return Vec2(c.x() - std::floor(c.x()), c.y() - std::floor(c.y()));
    }
};

double torus_delta(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

bool torus_close(const Vec2& a, const Vec2& b, double eps) {
    return torus_delta(a.x(), b.x()) < eps && torus_delta(a.y(), b.y()) < eps;
}

}  // namespace

VerifyResult verify_certificate(const Json& cert) {
    VerifyResult vr;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        vr.checks.push_back(name + ": " + (ok ? "pass" : "FAIL") +
                            (detail.empty() ? "" : " (" + detail + ")"));
        if (!ok) {
            vr.ok = false;
            vr.failures.push_back(name + (detail.empty() ? "" : ": " + detail));
        }
    };

    TorusGeometry g;
    AngleVector angles;
    EdgeVector edges;
    {
        const auto& pj = cert.at("prototile");
        for (int i = 0; i < 5; ++i) {
            angles.deg(i) = pj.at("angles_deg").at(static_cast<size_t>(i)).get<double>();
            edges.len(i) = pj.at("edges").at(static_cast<size_t>(i)).get<double>();
        }
    }
    try {
        g.proto = build_pentagon(angles, edges);
    } catch (const GeometryError& err) {
        check("prototile_realizes", false, err.what());
        return vr;
    }
    check("prototile_realizes", true);

    g.t1 = Vec2(cert.at("lattice").at("t1").at(0).get<double>(),
                cert.at("lattice").at("t1").at(1).get<double>());
    g.t2 = Vec2(cert.at("lattice").at("t2").at(0).get<double>(),
                cert.at("lattice").at("t2").at(1).get<double>());
    g.L << g.t1.x(), g.t2.x(), g.t1.y(), g.t2.y();
    const double det = g.L.determinant();
    check("lattice_nondegenerate", std::abs(det) > 1e-12 * g.t1.norm() * g.t2.norm());
    if (!vr.ok) return vr;
    g.Linv = g.L.inverse();

    for (const auto& tj : cert.at("tiles")) {
        const Congruence pose = pose_from_json(tj);
        std::array<Vec2, 5> c;
        for (int i = 0; i < 5; ++i) c[static_cast<size_t>(i)] = pose.apply(g.proto.vertex(i));
        g.corners.push_back(c);
    }
    const int n = static_cast<int>(g.corners.size());
    check("domain_nonempty", n > 0);
    if (!vr.ok) return vr;

    const double area = g.proto.area();
    check("area_identity",
          std::abs(n * area - std::abs(det)) <= 1e-6 * std::abs(det),
          "tiles*area=" + std::to_string(n * area) + " |det|=" + std::to_string(std::abs(det)));

    // interiors disjoint modulo the lattice (3x3 block of translates)
    {
        bool ok = true;
        const double eps = 1e-9 * g.proto.diameter();
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < n && ok; ++j) {
                for (int u = -1; u <= 1 && ok; ++u) {
                    for (int v = -1; v <= 1 && ok; ++v) {
                        if (i == j && u == 0 && v == 0) continue;
                        std::array<Vec2, 5> moved = g.corners[static_cast<size_t>(j)];
                        const Vec2 shift = u * g.t1 + v * g.t2;
                        for (auto& p : moved) p += shift;
                        if (overlap_points(g.corners[static_cast<size_t>(i)], moved, eps) ==
                            OverlapKind::InteriorsIntersect)
                            ok = false;
                    }
                }
            }
        }
        check("interiors_disjoint_mod_lattice", ok);
    }

    const double frac_eps = 1e-6 / std::max(1.0, std::min(g.t1.norm(), g.t2.norm()) /
                                                     g.proto.diameter());

    // edge pairing modulo the lattice: cluster wrapped midpoints
    {
        struct REdge {
            Vec2 mid_frac;
            Vec2 a_frac, b_frac;
            double len;
        };
        std::vector<REdge> redges;
        for (int i = 0; i < n; ++i) {
            for (int s = 0; s < 5; ++s) {
                const Vec2 a = g.corners[static_cast<size_t>(i)][static_cast<size_t>(s)];
                const Vec2 b = g.corners[static_cast<size_t>(i)][static_cast<size_t>(mod5(s + 1))];
                redges.push_back({g.wrap_frac(0.5 * (a + b)), g.wrap_frac(a), g.wrap_frac(b),
                                  (b - a).norm()});
            }
        }
        std::vector<int> paired(redges.size(), -1);
        bool ok = true;
        for (size_t i = 0; i < redges.size() && ok; ++i) {
            if (paired[i] >= 0) continue;
            int found = -1;
            for (size_t j = i + 1; j < redges.size(); ++j) {
                if (paired[j] >= 0) continue;
                if (!torus_close(redges[i].mid_frac, redges[j].mid_frac, frac_eps)) continue;
                const bool ends_match =
                    (torus_close(redges[i].a_frac, redges[j].a_frac, frac_eps) &&
                     torus_close(redges[i].b_frac, redges[j].b_frac, frac_eps)) ||
                    (torus_close(redges[i].a_frac, redges[j].b_frac, frac_eps) &&
                     torus_close(redges[i].b_frac, redges[j].a_frac, frac_eps));
                if (!ends_match) continue;
                if (std::abs(redges[i].len - redges[j].len) > 1e-9 * g.proto.diameter()) continue;
                found = static_cast<int>(j);
                break;
            }
            if (found < 0) {
                ok = false;
            } else {
                paired[i] = found;
                paired[static_cast<size_t>(found)] = static_cast<int>(i);
            }
        }
        check("all_edges_mated_mod_lattice", ok);
    }

    // node closure modulo the lattice
    std::vector<int> corner_valence(static_cast<size_t>(5 * n), 0);
    {
        std::vector<Vec2> fracs;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < 5; ++l)
                fracs.push_back(g.wrap_frac(g.corners[static_cast<size_t>(i)][static_cast<size_t>(l)]));
        std::vector<int> cluster(fracs.size(), -1);
        int next_id = 0;
        for (size_t i = 0; i < fracs.size(); ++i) {
            if (cluster[i] >= 0) continue;
            const int id = next_id++;
            for (size_t j = i; j < fracs.size(); ++j)
                if (cluster[j] < 0 && torus_close(fracs[i], fracs[j], frac_eps)) cluster[j] = id;
        }
        std::vector<double> sums(static_cast<size_t>(next_id), 0.0);
        std::vector<int> valence(static_cast<size_t>(next_id), 0);
        for (size_t i = 0; i < fracs.size(); ++i) {
            sums[static_cast<size_t>(cluster[i])] += g.proto.angle_deg(static_cast<int>(i % 5));
            ++valence[static_cast<size_t>(cluster[i])];
        }
        bool ok = true;
        for (int id = 0; id < next_id; ++id) {
            if (std::abs(sums[static_cast<size_t>(id)] - 360.0) > 1e-6) ok = false;
            if (valence[static_cast<size_t>(id)] < 3) ok = false;
        }
        check("all_nodes_closed_mod_lattice", ok);

        // recount census against the certificate
        std::map<int, int> census;
        for (int id = 0; id < next_id; ++id) ++census[valence[static_cast<size_t>(id)]];
        bool census_ok = true;
        if (cert.contains("node_census")) {
            for (const auto& [k, c] : cert.at("node_census").items())
                if (census[std::stoi(k)] != c.get<int>()) census_ok = false;
            int total = 0;
            for (const auto& [k, c] : census) total += c;
            int cert_total = 0;
            for (const auto& [k, c] : cert.at("node_census").items()) cert_total += c.get<int>();
            if (total != cert_total) census_ok = false;
        }
        check("node_census_matches", census_ok);

        long long corners_sum = 0;
        for (const auto& [k, c] : census) corners_sum += static_cast<long long>(k) * c;
        check("corner_identity", corners_sum == 5LL * n,
              "sum k*count = " + std::to_string(corners_sum));

        for (size_t i = 0; i < fracs.size(); ++i)
            corner_valence[i] = valence[static_cast<size_t>(cluster[i])];
    }

    // Bagina witness and Lemma 1, recomputed
    {
        bool bagina = false;
        bool any_high = false;
        bool lemma1_ok = true;
        for (int i = 0; i < n; ++i) {
            int three = 0, four = 0;
            for (int l = 0; l < 5; ++l) {
                if (corner_valence[static_cast<size_t>(5 * i + l)] == 3) ++three;
            }
            four = three;
            if (three >= 3) bagina = true;
            (void)four;
        }
        for (int v : corner_valence)
            if (v >= 5) any_high = true;
        if (any_high) {
            lemma1_ok = false;
            for (int i = 0; i < n && !lemma1_ok; ++i) {
                int three = 0;
                for (int l = 0; l < 5; ++l)
                    if (corner_valence[static_cast<size_t>(5 * i + l)] == 3) ++three;
                if (three >= 4) lemma1_ok = true;
            }
        }
        check("bagina_witness_exists", bagina);
        check("lemma1", lemma1_ok);
    }

    return vr;
}

std::string dump_deterministic(const Json& j) { return j.dump(2); }

}  // namespace pentile

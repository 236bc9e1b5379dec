#include "pentile/sort.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <thread>

namespace pentile {

const char* to_string(Disposition d) {
    switch (d) {
        case Disposition::InfeasibleGeometry: return "infeasible-geometry";
        case Disposition::NonEdgeToEdge: return "non-edge-to-edge";
        case Disposition::MatchesType: return "matches-type";
        case Disposition::Uncertain: return "uncertain";
    }
    return "?";
}

PatternOutcome sort_one(const CandidatePattern& pattern, const std::vector<TypeDefinition>& table,
                        const SortOptions& opts, const ConstraintSet* extra) {
    const auto t0 = std::chrono::steady_clock::now();
    PatternOutcome out;
    out.pattern_id = pattern.id;
    out.pattern_key = pattern.key();

    ConstraintSet cs = ConstraintSet::from_pattern(pattern, true);
    if (extra) {
        cs.angle_relations.insert(cs.angle_relations.end(), extra->angle_relations.begin(),
                                  extra->angle_relations.end());
        cs.edge_classes.insert(cs.edge_classes.end(), extra->edge_classes.begin(),
                               extra->edge_classes.end());
        cs.edge_relations.insert(cs.edge_relations.end(), extra->edge_relations.begin(),
                                 extra->edge_relations.end());
    }

    SolveOptions sopts;
    sopts.samples_per_dim = opts.samples_per_dim;
    sopts.max_samples = opts.max_samples;
    sopts.seed = opts.seed + static_cast<unsigned>(pattern.id);
    sopts.tol = opts.tol;
    const SolveResult family = solve_family(cs, sopts);
    out.angle_dim = family.angle_dim;

    auto finish = [&](Disposition d, std::string reason) {
        out.disposition = d;
        out.reason = std::move(reason);
        out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                t0)
                          .count();
        return out;
    };

    if (!family.angles_feasible) {
        out.farkas = family.infeasibility;
        if (out.farkas) {
            const auto sys = build_angle_system(cs.angle_relations);
            out.farkas_rechecked = check_farkas(sys.A, sys.b, sys.G, sys.h, *out.farkas);
        }
        return finish(Disposition::InfeasibleGeometry,
                      "angle system infeasible (exact Farkas certificate)");
    }
    out.samples_realized = static_cast<int>(family.samples.size());
    if (family.samples.empty()) {
        return finish(Disposition::Uncertain,
                      family.closure_empty ? "angles feasible but no positive closed edge assignment found"
                                           : "no realizable sample found");
    }

    // classification evidence
    std::set<std::string> types;
    bool all_classified = true;
    for (const auto& sample : family.samples) {
        const auto cls = classify(sample.angles, sample.edges, table, opts.tol,
                                  {true, false, false});
        if (cls.types.empty()) all_classified = false;
        types.insert(cls.types.begin(), cls.types.end());
    }
    out.matched_types.assign(types.begin(), types.end());
    if (all_classified) {
        std::string names;
        for (const auto& t : out.matched_types) names += (names.empty() ? "" : ",") + t;
        return finish(Disposition::MatchesType,
                      "every sampled family member classifies into {" + names + "}");
    }

    // bounded patch evidence on the unclassified side of the family
    GrowLimits limits;
    limits.target_depth = opts.ring_budget;
    limits.max_placements = opts.placements_budget;
    limits.corollary1_prune = opts.corollary1_prune;
    limits.allow_reflections = opts.allow_reflections;

    int examined = 0;
    for (const auto& sample : family.samples) {
        if (examined >= opts.grow_samples) break;
        ++examined;
        Patch patch(sample.shape, opts.tol);
        patch.place_seed();
        patch.annotate_seed_node(pattern.v1.anchor, NodeConstraint{pattern.v1.multiset});
        if (pattern.v2.anchor != pattern.v1.anchor)
            patch.annotate_seed_node(pattern.v2.anchor, NodeConstraint{pattern.v2.multiset});
        const GrowResult r = grow(patch, limits);
        out.placements_tried += r.stats.placements_tried;
        switch (r.outcome) {
            case GrowOutcome::ReachedTargetDepth: ++out.samples_reached_depth; break;
            case GrowOutcome::Exhausted: ++out.samples_exhausted; break;
            case GrowOutcome::BudgetExceeded: ++out.samples_budget; break;
        }
    }

    if (out.samples_reached_depth == 0 && out.samples_budget == 0 && examined > 0) {
        return finish(Disposition::NonEdgeToEdge,
                      "patch search exhausted below ring depth " +
                          std::to_string(opts.ring_budget) + " for all " +
                          std::to_string(examined) + " examined samples (bounded evidence)");
    }
    if (!types.empty())
        return finish(Disposition::Uncertain, "mixed evidence: some samples classify, some grow");
    if (out.samples_budget > 0)
        return finish(Disposition::Uncertain, "placement budget exhausted");
    return finish(Disposition::Uncertain,
                  "patch reaches depth " + std::to_string(opts.ring_budget) +
                      " but samples classify into no type");
}

SortReport first_stage_sort(const std::vector<CandidatePattern>& patterns,
                            const std::vector<TypeDefinition>& table, const SortOptions& opts) {
    SortReport rep;
    rep.total = static_cast<int>(patterns.size());
    rep.outcomes.resize(patterns.size());

    const int workers = std::max(1, opts.workers);
    std::atomic<size_t> next{0};
    auto work = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= patterns.size()) break;
            rep.outcomes[i] = sort_one(patterns[i], table, opts);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (const auto& o : rep.outcomes) {
        switch (o.disposition) {
            case Disposition::InfeasibleGeometry: ++rep.infeasible; break;
            case Disposition::NonEdgeToEdge: ++rep.non_edge_to_edge; break;
            case Disposition::MatchesType: ++rep.matches_type; break;
            case Disposition::Uncertain: ++rep.uncertain; break;
        }
    }
    return rep;
}

std::vector<std::pair<std::string, PatternOutcome>> refine_by_edge_conditions(
    const CandidatePattern& pattern, const std::vector<TypeDefinition>& table,
    const SortOptions& opts) {
    std::set<std::pair<int, int>> forced(pattern.forced_edge_equalities.begin(),
                                         pattern.forced_edge_equalities.end());
    std::vector<std::pair<std::string, PatternOutcome>> out;
    for (int i = 0; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) {
            if (forced.count({i, j})) continue;
            ConstraintSet extra;
            extra.edge_classes.push_back({i, j});
            std::string name = std::string(1, edge_name(i)) + "=" + edge_name(j);
            out.emplace_back(name, sort_one(pattern, table, opts, &extra));
        }
    }
    return out;
}

}  // namespace pentile

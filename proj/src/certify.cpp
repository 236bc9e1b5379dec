#include "pentile/certify.hpp"

namespace pentile {

const char* to_string(CertifyOutcome::Stage s) {
    switch (s) {
        case CertifyOutcome::Stage::Realize: return "realize";
        case CertifyOutcome::Stage::Grow: return "grow";
        case CertifyOutcome::Stage::Detect: return "detect-periods";
        case CertifyOutcome::Stage::Torus: return "build-torus";
        case CertifyOutcome::Stage::Checks: return "checks";
        case CertifyOutcome::Stage::Done: return "done";
    }
    return "?";
}

CertifyOutcome certify_pentagon(const AngleVector& angles, const EdgeVector& edges,
                                const CertifyOptions& opts) {
    CertifyOutcome out;

    PentagonShape shape;
    try {
        shape = build_pentagon(angles, edges, opts.tol);
    } catch (const GeometryError& err) {
        out.stage = CertifyOutcome::Stage::Realize;
        out.message = err.what();
        return out;
    }

    long long budget_left = opts.budget;
    std::string last_failure = "no completion examined";
    auto last_stage = CertifyOutcome::Stage::Grow;

    for (int depth = opts.depth; depth <= opts.max_depth && budget_left > 0; ++depth) {
        Patch patch(shape, opts.tol);
        patch.place_seed();

        GrowLimits limits;
        limits.target_depth = depth;
        limits.max_placements = budget_left;
        limits.corollary1_prune = opts.corollary1_prune;
        limits.allow_reflections = opts.allow_reflections;
        GrowSearch search(patch, limits);

        // enumerate completions at this depth; wrong local configurations are
        // skipped when their patch carries no lattice or fails the torus
        const int max_attempts = 64;
        bool any_completion = false;
        for (int attempt = 0; attempt < max_attempts; ++attempt) {
            const GrowResult r = search.next();
            out.grow_result.stats.placements_tried =
                search.stats().placements_tried + (opts.budget - budget_left);
            out.grow_result.stats.backtracks += r.stats.backtracks;
            out.grow_result.stats.peak_tiles = std::max(out.grow_result.stats.peak_tiles,
                                                        r.stats.peak_tiles);
            out.grow_result.stats.peak_ring = std::max(out.grow_result.stats.peak_ring,
                                                       r.stats.peak_ring);
            out.grow_result.outcome = r.outcome;
            out.used_depth = depth;

            if (r.outcome == GrowOutcome::BudgetExceeded) {
                out.stage = CertifyOutcome::Stage::Grow;
                out.message = "placement budget exhausted at depth " + std::to_string(depth);
                out.patch = std::move(patch);
                return out;
            }
            if (r.outcome == GrowOutcome::Exhausted) {
                if (!any_completion && depth == opts.depth) {
                    // not even one full ring arrangement exists
                    out.stage = CertifyOutcome::Stage::Grow;
                    out.message = "grow: exhausted, no configuration completes depth " +
                                  std::to_string(depth);
                    out.patch = std::move(patch);
                    return out;
                }
                break;  // all completions at this depth examined; deepen
            }
            any_completion = true;

            std::optional<PeriodLattice> lattice;
            try {
                lattice = detect_periods(patch, {std::min(depth, 3), 64, 1e-7});
            } catch (const PatchTooSmall&) {
                lattice = std::nullopt;
            }
            if (!lattice) {
                last_stage = CertifyOutcome::Stage::Detect;
                last_failure = "no translation lattice at depth " + std::to_string(depth);
                continue;
            }
            try {
                out.torus = build_torus(patch, *lattice);
            } catch (const PeriodicityError& err) {
                last_stage = CertifyOutcome::Stage::Torus;
                last_failure = err.what();
                continue;
            }
            out.lattice = lattice;
            // theorem-backed checks; falsification aborts loudly upstream
            out.density = node_density(*out.torus);
            out.bagina_tile = bagina_witness(*out.torus);
            out.lemma1_witness = lemma1_check(*out.torus);
            out.stage = CertifyOutcome::Stage::Done;
            out.patch = std::move(patch);
            return out;
        }
        budget_left = opts.budget - search.stats().placements_tried;
        if (depth == opts.max_depth) out.patch = std::move(patch);
    }

    out.stage = last_stage;
    out.message = last_failure;
    return out;
}

}  // namespace pentile

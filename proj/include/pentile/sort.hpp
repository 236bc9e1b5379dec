#pragma once

#include "pentile/conditions.hpp"
#include "pentile/grow.hpp"
#include "pentile/solve_family.hpp"

#include <string>
#include <vector>

namespace pentile {

// The four first-stage buckets.
enum class Disposition { InfeasibleGeometry, NonEdgeToEdge, MatchesType, Uncertain };

const char* to_string(Disposition d);

struct PatternOutcome {
    int pattern_id = -1;
    std::string pattern_key;
    Disposition disposition = Disposition::Uncertain;
    std::string reason;
    std::vector<std::string> matched_types;  // union over samples, sorted
    std::optional<FarkasCertificate> farkas; // exact certificate for bucket (i)
    bool farkas_rechecked = false;
    int angle_dim = 0;
    int samples_realized = 0;
    int samples_reached_depth = 0;
    int samples_exhausted = 0;
    int samples_budget = 0;
    long long placements_tried = 0;
    double wall_ms = 0.0;
};

struct SortOptions {
    int ring_budget = 2;                  // depth of bounded non-tiler evidence
    long long placements_budget = 5000;   // per grow call
    int samples_per_dim = 5;
    int max_samples = 6;                  // realized pentagons examined per pattern
    int grow_samples = 3;                 // samples given to the patch search
    bool corollary1_prune = false;
    bool allow_reflections = true;
    unsigned seed = 20150731;
    int workers = 1;
    Tolerances tol;
};

struct SortReport {
    int total = 0;
    int infeasible = 0;
    int non_edge_to_edge = 0;
    int matches_type = 0;
    int uncertain = 0;
    std::vector<PatternOutcome> outcomes;  // ordered by pattern id
};

SortReport first_stage_sort(const std::vector<CandidatePattern>& patterns,
                            const std::vector<TypeDefinition>& table, const SortOptions& opts);

// One pattern, with extra constraints injected (the 34 -> 42 style refinement
// and the interactive `refine` command).
PatternOutcome sort_one(const CandidatePattern& pattern, const std::vector<TypeDefinition>& table,
                        const SortOptions& opts, const ConstraintSet* extra = nullptr);

// Splits an uncertain pattern over every single edge equality not already
// forced; returns the per-hypothesis outcomes.
std::vector<std::pair<std::string, PatternOutcome>> refine_by_edge_conditions(
    const CandidatePattern& pattern, const std::vector<TypeDefinition>& table,
    const SortOptions& opts);

}  // namespace pentile

#pragma once

#include "pentile/patch.hpp"

#include <vector>

namespace pentile {

enum class GrowOutcome { ReachedTargetDepth, Exhausted, BudgetExceeded };

const char* to_string(GrowOutcome o);

struct GrowLimits {
    int target_depth = 2;
    long long max_placements = 1'000'000;
    bool corollary1_prune = false;
    bool allow_reflections = true;
};

struct GrowStats {
    long long placements_tried = 0;
    long long backtracks = 0;
    int peak_tiles = 0;
    int peak_ring = 0;
};

struct GrowResult {
    GrowOutcome outcome = GrowOutcome::Exhausted;
    GrowStats stats;
};

// Resumable depth-first backtracking over open edges, most-constrained-edge-
// first. next() leaves the patch in the completed configuration and can be
// called again to backtrack into the following one; the placement budget is
// shared across calls. Deterministic.
class GrowSearch {
  public:
    GrowSearch(Patch& patch, const GrowLimits& limits);

    // Finds the next configuration complete to target_depth. On Exhausted the
    // patch is unwound to its seed state; on BudgetExceeded it holds the
    // configuration reached when the budget ran out.
    GrowResult next();

    const GrowStats& stats() const { return stats_; }

  private:
    struct Frame {
        Patch::OpenEdge edge;
        std::vector<Patch::Placement> candidates;
        size_t index = 0;   // candidate currently placed (when placed)
        bool placed = false;
    };

    bool relevant(const Patch::OpenEdge& e) const;
    bool select(Frame& frame) const;

    Patch& patch_;
    GrowLimits limits_;
    Patch::PlacementOptions popts_;
    GrowStats stats_;
    std::vector<Frame> frames_;
    bool yielded_ = false;
    bool exhausted_ = false;
};

// One-shot search: the first complete configuration, or exhaustion/budget.
GrowResult grow(Patch& patch, const GrowLimits& limits);

}  // namespace pentile

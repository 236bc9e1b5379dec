#include "pentile/grow.hpp"

#include <algorithm>

namespace pentile {

const char* to_string(GrowOutcome o) {
    switch (o) {
        case GrowOutcome::ReachedTargetDepth: return "reached-target-depth";
        case GrowOutcome::Exhausted: return "exhausted";
        case GrowOutcome::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

GrowSearch::GrowSearch(Patch& patch, const GrowLimits& limits)
    : patch_(patch), limits_(limits) {
    popts_.allow_reflections = limits.allow_reflections;
    popts_.corollary1_prune = limits.corollary1_prune;
    popts_.interior_ring_limit = limits.target_depth;
    stats_.peak_tiles = patch.tile_count();
}

bool GrowSearch::relevant(const Patch::OpenEdge& e) const {
    if (patch_.tile(e.tile).ring < limits_.target_depth) return true;
    for (int nid : {e.node_u, e.node_v}) {
        const auto& node = patch_.node(nid);
        if (node.closed(patch_.tolerances().angle_tol_deg)) continue;
        for (const auto& [tid, label] : node.corners)
            if (patch_.tile(tid).ring < limits_.target_depth) return true;
    }
    return false;
}

// Most-constrained relevant open edge; false when a relevant edge admits no
// placement at all (dead end).
bool GrowSearch::select(Frame& frame) const {
    bool found = false;
    for (const auto& e : patch_.open_edges()) {
        if (!relevant(e)) continue;
        auto cands = patch_.candidate_placements(e, popts_);
        if (cands.empty()) return false;
        if (!found || cands.size() < frame.candidates.size()) {
            frame.edge = e;
            frame.candidates = std::move(cands);
            found = true;
        }
    }
    return found;
}

GrowResult GrowSearch::next() {
    if (exhausted_) return {GrowOutcome::Exhausted, stats_};

    enum class Mode { Advance, Retreat, Try };
    Mode mode = yielded_ ? Mode::Retreat : Mode::Advance;

    while (true) {
        if (mode == Mode::Advance) {
            if (patch_.complete_to_depth(limits_.target_depth)) {
                yielded_ = true;
                return {GrowOutcome::ReachedTargetDepth, stats_};
            }
            Frame frame;
            if (!select(frame)) {
                mode = Mode::Retreat;
                continue;
            }
            frames_.push_back(std::move(frame));
            mode = Mode::Try;
        } else if (mode == Mode::Try) {
            Frame& f = frames_.back();
            bool descended = false;
            while (f.index < f.candidates.size()) {
                if (stats_.placements_tried >= limits_.max_placements)
                    return {GrowOutcome::BudgetExceeded, stats_};
                ++stats_.placements_tried;
                if (patch_.try_place(f.edge, f.candidates[f.index], popts_)) {
                    f.placed = true;
                    stats_.peak_tiles = std::max(stats_.peak_tiles, patch_.tile_count());
                    stats_.peak_ring = std::max(stats_.peak_ring, patch_.max_ring());
                    descended = true;
                    break;
                }
                ++f.index;
            }
            if (descended) {
                mode = Mode::Advance;
            } else {
                frames_.pop_back();
                mode = Mode::Retreat;
            }
        } else {  // Retreat
            if (frames_.empty()) {
                exhausted_ = true;
                return {GrowOutcome::Exhausted, stats_};
            }
            Frame& f = frames_.back();
            if (f.placed) {
                patch_.undo_last();
                ++stats_.backtracks;
                f.placed = false;
                ++f.index;
            }
            mode = Mode::Try;
        }
    }
}

GrowResult grow(Patch& patch, const GrowLimits& limits) {
    if (limits.max_placements <= 0 && !patch.complete_to_depth(limits.target_depth)) {
        GrowStats stats;
        stats.peak_tiles = patch.tile_count();
        return {GrowOutcome::BudgetExceeded, stats};
    }
    GrowSearch search(patch, limits);
    return search.next();
}

}  // namespace pentile

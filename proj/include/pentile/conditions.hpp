#pragma once

#include "pentile/pentagon_model.hpp"
#include "pentile/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pentile {

// A 3-valent node condition: three vertex labels (with repetition) meeting at
// a node, summing to 360, attached to an anchor vertex of the reference tile.
struct AngleCondition {
    LabelTriple multiset;  // sorted
    int anchor;            // member of multiset

    AngleRelation relation() const;
    std::string str() const;
    bool operator==(const AngleCondition&) const = default;
};

// All (anchor, multiset) pairs in canonical form. 35 multisets fan out over
// their distinct members: 75 conditions.
std::vector<AngleCondition> enumerate_angle_conditions();

struct CandidatePattern {
    int id = -1;
    AngleCondition v1, v2;  // anchors distinct
    // Edge equalities (pairs of edge indices) forced in every consistent
    // local matching around the two nodes; often empty.
    std::vector<std::pair<int, int>> forced_edge_equalities;

    std::string key() const;  // canonical identity: the unordered multiset pair
    std::string str() const;
};

struct EnumerationRules {
    bool deduplicate = true;
    // Conditions {X,X,X} pin a single angle to 120 and admit only one anchor;
    // the canonical 465 excludes patterns built from them (see README).
    bool include_constant_conditions = false;
    bool allow_reflections = true;  // affects forced-equality computation only
};

// Canonical, deterministic pattern list; default rules yield exactly 465.
std::vector<CandidatePattern> enumerate_candidate_patterns(const EnumerationRules& rules = {});

// Edge equalities forced at a single 3-valent node, intersected over all
// local matchings (cyclic arrangements x neighbor chiralities).
std::vector<std::pair<int, int>> forced_equalities_at_node(const AngleCondition& cond,
                                                           bool allow_reflections);

}  // namespace pentile

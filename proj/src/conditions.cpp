#include "pentile/conditions.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace pentile {

AngleRelation AngleCondition::relation() const {
    AngleRelation rel;
    for (int v : multiset) rel.coeff[v] += 1;
    rel.rhs_deg = 360;
    return rel;
}

std::string AngleCondition::str() const {
    std::string out = relation().str();
    out += " @ ";
    out += vertex_name(anchor);
    return out;
}

std::vector<AngleCondition> enumerate_angle_conditions() {
    std::vector<AngleCondition> out;
    for (const auto& m : all_label_triples()) {
        std::set<int> anchors(m.begin(), m.end());
        for (int a : anchors) out.push_back({m, a});
    }
    return out;
}

std::string CandidatePattern::key() const {
    auto fmt = [](const LabelTriple& t) {
        std::string s;
        for (int v : t) s += vertex_name(v);
        return s;
    };
    std::string k1 = fmt(v1.multiset), k2 = fmt(v2.multiset);
    if (k2 < k1) std::swap(k1, k2);
    return k1 + "|" + k2;
}

std::string CandidatePattern::str() const {
    return v1.str() + " ; " + v2.str();
}

namespace {

bool is_constant(const LabelTriple& t) { return t[0] == t[1] && t[1] == t[2]; }

// Smallest anchor pair (a1 in m1, a2 in m2, a1 != a2), lexicographic.
std::optional<std::pair<int, int>> pick_anchors(const LabelTriple& m1, const LabelTriple& m2) {
    for (int a1 : m1) {
        for (int a2 : m2) {
            if (a1 != a2) return std::make_pair(a1, a2);
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::pair<int, int>> forced_equalities_at_node(const AngleCondition& cond,
                                                           bool allow_reflections) {
    // The node joins the reference corner (the anchor) with two corners of
    // neighbor copies. Going counterclockwise around the node, consecutive
    // tiles share an edge: the CCW-outgoing edge of one equals the incoming
    // edge of the next. Direct copies leave through next_edge(corner) and
    // enter through prev_edge(corner); mirrored copies swap the two.
    LabelTriple m = cond.multiset;
    std::array<int, 2> rest{};
    {
        // remove one instance of the anchor
        int r = 0;
        bool removed = false;
        for (int v : m) {
            if (!removed && v == cond.anchor) { removed = true; continue; }
            rest[r++] = v;
        }
    }

    std::set<std::pair<int, int>> common;
    bool first = true;
    const std::array<std::array<int, 2>, 2> orders = {{{rest[0], rest[1]}, {rest[1], rest[0]}}};
    const int chirality_count = allow_reflections ? 2 : 1;
    for (const auto& ord : orders) {
        for (int c1 = 0; c1 < chirality_count; ++c1) {
            for (int c2 = 0; c2 < chirality_count; ++c2) {
                std::array<int, 3> corner = {cond.anchor, ord[0], ord[1]};
                std::array<bool, 3> mirrored = {false, c1 == 1, c2 == 1};
                std::set<std::pair<int, int>> eqs;
                for (int i = 0; i < 3; ++i) {
                    const int j = (i + 1) % 3;
                    const int out = mirrored[i] ? prev_edge(corner[i]) : next_edge(corner[i]);
                    const int in = mirrored[j] ? next_edge(corner[j]) : prev_edge(corner[j]);
                    auto p = std::minmax(out, in);
                    if (p.first != p.second) eqs.insert({p.first, p.second});
                }
                if (first) {
                    common = eqs;
                    first = false;
                } else {
                    std::set<std::pair<int, int>> inter;
                    std::set_intersection(common.begin(), common.end(), eqs.begin(), eqs.end(),
                                          std::inserter(inter, inter.begin()));
                    common = std::move(inter);
                }
            }
        }
    }
    return {common.begin(), common.end()};
}

std::vector<CandidatePattern> enumerate_candidate_patterns(const EnumerationRules& rules) {
    std::vector<CandidatePattern> out;
    const auto triples = all_label_triples();

    if (rules.deduplicate) {
        // Canonical patterns: unordered pairs with repetition of sum-to-360
        // conditions, anchors chosen as the lexicographically least feasible
        // pair. 30 non-constant conditions -> 30*31/2 = 465.
        for (size_t i = 0; i < triples.size(); ++i) {
            if (!rules.include_constant_conditions && is_constant(triples[i])) continue;
            for (size_t j = i; j < triples.size(); ++j) {
                if (!rules.include_constant_conditions && is_constant(triples[j])) continue;
                auto anchors = pick_anchors(triples[i], triples[j]);
                if (!anchors) continue;  // {X,X,X} twice: no distinct anchors
                CandidatePattern p;
                p.v1 = {triples[i], anchors->first};
                p.v2 = {triples[j], anchors->second};
                p.id = static_cast<int>(out.size());
                out.push_back(std::move(p));
            }
        }
    } else {
        // Raw anchored enumeration: every unordered pair of anchored
        // conditions with distinct anchor vertices.
        const auto conds = enumerate_angle_conditions();
        for (size_t i = 0; i < conds.size(); ++i) {
            for (size_t j = i + 1; j < conds.size(); ++j) {
                if (conds[i].anchor == conds[j].anchor) continue;
                CandidatePattern p;
                p.v1 = conds[i];
                p.v2 = conds[j];
                p.id = static_cast<int>(out.size());
                out.push_back(std::move(p));
            }
        }
    }

    for (auto& p : out) {
        auto f1 = forced_equalities_at_node(p.v1, rules.allow_reflections);
        auto f2 = forced_equalities_at_node(p.v2, rules.allow_reflections);
        std::set<std::pair<int, int>> merged(f1.begin(), f1.end());
        merged.insert(f2.begin(), f2.end());
        p.forced_edge_equalities.assign(merged.begin(), merged.end());
    }
    return out;
}

}  // namespace pentile

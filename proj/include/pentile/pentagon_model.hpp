#pragma once

#include "pentile/geometry.hpp"
#include "pentile/types.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pentile {

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One linear relation over the five interior angles: sum coeff[v] * angle[v]
// = rhs, coefficients integer, rhs an integer multiple of 180.
struct AngleRelation {
    std::array<int, 5> coeff{0, 0, 0, 0, 0};
    int rhs_deg = 0;

    double evaluate(const AngleVector& a) const;
    std::string str() const;
};

// Linear relation over edge lengths: sum coeff[e] * len[e] = 0 (homogeneous;
// edge conditions in the table are scale-free).
struct EdgeRelation {
    std::array<int, 5> coeff{0, 0, 0, 0, 0};

    double evaluate(const EdgeVector& e) const;
    std::string str() const;
};

// One row of the type table: a named family of convex pentagonal tiles.
struct TypeDefinition {
    std::string name;                        // "1", "2", ... "15"
    bool edge_to_edge = false;               // one of the eight, or a flagged extra
    std::vector<AngleRelation> angle_relations;
    std::vector<std::vector<int>> edge_classes;  // equality classes over edge indices
    std::vector<EdgeRelation> edge_relations;    // extra linear edge conditions

    // All edge equalities as pairwise relations (for uniform evaluation).
    std::vector<EdgeRelation> equality_relations() const;
};

std::vector<TypeDefinition> load_type_table(const std::string& path);
std::vector<TypeDefinition> parse_type_table(const std::string& text,
                                             const std::string& origin = "<string>");

struct TypeMatch {
    std::string name;
    Relabeling labeling;   // the relabeling under which the row matched
};

struct NearMiss {
    std::string name;
    std::string relation;
    double residual;       // degrees or relative length units
};

struct ClassificationResult {
    std::set<std::string> types;          // matching edge-to-edge type names
    std::vector<TypeMatch> matches;       // one witness labeling per matched type
    std::vector<NearMiss> near_misses;    // relations failing by < 10x tolerance
};

struct ClassifyOptions {
    bool up_to_relabeling = true;   // try all 10 label symmetries
    bool report_near_misses = true;
    bool include_non_edge_to_edge = false;  // also match the flagged extra rows
};

// Returns every type whose relations hold within tolerance. Types are label
// families: membership is checked under all relabelings unless disabled.
ClassificationResult classify(const AngleVector& angles, const EdgeVector& edges,
                              const std::vector<TypeDefinition>& table,
                              const Tolerances& tol = {}, const ClassifyOptions& opts = {});

// --- tentative 3-valent analysis (Corollary 1 support) ---

// A multiset of three vertex labels, canonically sorted.
using LabelTriple = std::array<int, 3>;

std::vector<LabelTriple> all_label_triples();  // the 35 size-3 multisets

struct TentativeNodeProfile {
    // per vertex label: the sum-to-360 triples containing it
    std::array<std::vector<LabelTriple>, 5> triples_at;
    int qualifying_vertices = 0;  // labels with a nonempty list
};

TentativeNodeProfile tentative_3valent_profile(const AngleVector& angles,
                                               const Tolerances& tol = {});

inline bool corollary1_applies(const TentativeNodeProfile& p) {
    return p.qualifying_vertices == 3;
}

}  // namespace pentile

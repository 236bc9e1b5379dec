#pragma once

#include "pentile/conditions.hpp"
#include "pentile/geometry.hpp"
#include "pentile/linear.hpp"
#include "pentile/pentagon_model.hpp"

#include <optional>
#include <vector>

namespace pentile {

struct SolveDiverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The constraint system fed to the family solver: linear angle relations
// (plus the implicit 540 sum and convexity bounds), edge equality classes,
// and homogeneous linear edge relations. Closure is imposed on realization.
struct ConstraintSet {
    std::vector<AngleRelation> angle_relations;
    std::vector<std::vector<int>> edge_classes;
    std::vector<EdgeRelation> edge_relations;

    static ConstraintSet from_pattern(const CandidatePattern& p, bool use_forced_equalities);
    static ConstraintSet from_type(const TypeDefinition& def);
    void add_condition(const AngleCondition& c) { angle_relations.push_back(c.relation()); }
};

struct SolveOptions {
    int samples_per_dim = 5;
    int max_samples = 25;
    unsigned seed = 20150731;
    Tolerances tol;
};

struct FamilySample {
    AngleVector angles;
    EdgeVector edges;    // normalized, max length 1
    PentagonShape shape;
};

struct SolveResult {
    bool angles_feasible = false;  // exact: open angle polytope nonempty
    std::optional<FarkasCertificate> infeasibility;  // when not feasible
    int angle_dim = 0;   // free dimensions of the angle solution space
    int edge_dim = 0;    // free dimensions of positive closed edge cone beyond scale
    // set when samples only exist on the closure-degenerate locus of the
    // angle space (families cut out by a vanishing closure determinant)
    int closure_codim = 0;
    bool closure_empty = false;  // feasible angles, but no sample closes positively
    std::vector<FamilySample> samples;

    // dimension of the solution manifold (modulo scale)
    int family_dim() const { return angle_dim - closure_codim + edge_dim; }

    bool empty_family() const { return !angles_feasible || samples.empty(); }
};

// Exact feasibility of {relations, sum 540, 0 < angle < 180} and the matrices
// of the system for certificate re-checking.
struct AngleSystem {
    RationalMatrix A;
    RationalVector b;
    RationalMatrix G;
    RationalVector h;
};
AngleSystem build_angle_system(const std::vector<AngleRelation>& relations);

SolveResult solve_family(const ConstraintSet& cs, const SolveOptions& opts = {});

// Positive, closed edge assignments for fixed angles under the edge
// constraints; lengths normalized to max 1. Returns up to max_samples.
std::vector<EdgeVector> solve_edges(const AngleVector& angles,
                                    const std::vector<std::vector<int>>& edge_classes,
                                    const std::vector<EdgeRelation>& edge_relations,
                                    int samples_per_dim, int max_samples, int* edge_dim_out);

}  // namespace pentile

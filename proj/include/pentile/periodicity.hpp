#pragma once

#include "pentile/patch.hpp"
#include "pentile/rational.hpp"

#include <map>
#include <optional>

namespace pentile {

struct PeriodicityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PatchTooSmall : PeriodicityError {
    using PeriodicityError::PeriodicityError;
};
struct NotInvariant : PeriodicityError {
    using PeriodicityError::PeriodicityError;
};
struct AreaMismatch : PeriodicityError {
    using PeriodicityError::PeriodicityError;
};
struct OpenBoundary : PeriodicityError {
    using PeriodicityError::PeriodicityError;
};

// A theorem-backed assertion failed on a verified torus. Either a geometry
// bug or a type-table transcription error; surfaced loudly, never swallowed.
struct FalsificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PeriodLattice {
    Vec2 t1 = Vec2::Zero();
    Vec2 t2 = Vec2::Zero();

    double det() const { return t1.x() * t2.y() - t1.y() * t2.x(); }
};

struct DetectOptions {
    int min_depth = 3;
    int max_candidates = 64;
    double parallel_eps = 1e-7;  // relative area threshold for independence
};

// Translations mapping core tiles onto same-pose tiles; the two shortest
// independent survivors, Gauss-reduced. Requires patch depth >= min_depth.
std::optional<PeriodLattice> detect_periods(const Patch& patch, const DetectOptions& opts = {});

// A verified quotient tiling: the periodicity certificate.
struct TorusTiling {
    PeriodLattice lattice;
    PentagonShape prototile;
    std::vector<PlacedTile> tiles;  // fundamental domain
    struct QNode {
        std::vector<std::pair<int, int>> corners;  // (domain tile, label)
        int valence() const { return static_cast<int>(corners.size()); }
    };
    std::vector<QNode> nodes;
    std::vector<std::array<int, 5>> corner_node;                  // per tile, per label
    std::vector<std::array<std::pair<int, int>, 5>> mate;         // per tile, per slot
    Tolerances tol;
};

// Selects the tiles anchored in the half-open fundamental parallelogram and
// re-derives matings and nodes modulo the lattice, validating every torus
// invariant. Success IS the periodicity certificate.
TorusTiling build_torus(const Patch& patch, const PeriodLattice& lattice);

struct DensityReport {
    int pentagons = 0;
    std::map<int, int> node_counts;         // valence -> count in the domain
    std::map<int, Rational> density;        // valence -> count / pentagons
    Rational corner_identity_lhs() const;   // sum_k density_k * k, exact
};

DensityReport node_density(const TorusTiling& torus);

// Tile with >= 3 corners on 3-valent nodes. Guaranteed on any valid torus;
// absence is a falsification event.
int bagina_witness(const TorusTiling& torus);

// If some node has valence >= 5, returns a tile with >= 4 corners on
// 3-valent nodes (absence aborts as falsification); nullopt when the
// hypothesis is vacuous.
std::optional<int> lemma1_check(const TorusTiling& torus);

}  // namespace pentile

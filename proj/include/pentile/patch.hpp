#pragma once

#include "pentile/geometry.hpp"
#include "pentile/pentagon_model.hpp"
#include "pentile/types.hpp"

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

namespace pentile {

struct PatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OpenNodesPresent : PatchError {
    using PatchError::PatchError;
};

// Required closure of a node as a 3-valent node with this corner multiset.
struct NodeConstraint {
    LabelTriple multiset;
};

struct PlacedTile {
    Congruence pose;
    bool mirrored = false;
    int ring = 0;
    std::array<Vec2, 5> corner;      // position of corner carrying label k
    std::array<int, 5> corner_node;  // node id per label
};

struct NodeRecord {
    Vec2 pos = Vec2::Zero();
    double angle_sum = 0.0;  // degrees
    std::vector<std::pair<int, int>> corners;  // (tile id, corner label)
    std::optional<NodeConstraint> constraint;

    int valence() const { return static_cast<int>(corners.size()); }
    bool closed(double angle_tol) const { return std::abs(angle_sum - 360.0) <= angle_tol; }
};

// A growing edge-to-edge configuration of congruent copies of one prototile.
// Placements are journaled so the search can backtrack.
class Patch {
  public:
    Patch(PentagonShape prototile, Tolerances tol = {});

    const PentagonShape& prototile() const { return proto_; }
    const Tolerances& tolerances() const { return tol_; }
    double snap_eps() const { return snap_eps_; }

    int tile_count() const { return static_cast<int>(tiles_.size()); }
    const PlacedTile& tile(int id) const { return tiles_[static_cast<size_t>(id)]; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    const NodeRecord& node(int id) const { return nodes_[static_cast<size_t>(id)]; }

    // Places the first tile. Only valid on an empty patch.
    int place_seed(const Congruence& pose = {});

    // Attaches a closure requirement to the seed-tile node at this vertex.
    // The label must be a member of the multiset.
    void annotate_seed_node(int vertex_label, const NodeConstraint& c);

    struct OpenEdge {
        int tile = -1;
        int slot = -1;  // prototile edge index
        int node_u = -1, node_v = -1;
    };
    std::vector<OpenEdge> open_edges() const;

    struct Placement {
        int proto_edge = 0;    // edge of the new copy mated to the open edge
        bool mirrored = false;
        Congruence pose;
    };

    struct PlacementOptions {
        bool allow_reflections = true;
        bool corollary1_prune = false;   // forbid closing nodes at valence >= 5
        int interior_ring_limit = -1;    // dead-node pruning applies below this ring
    };

    // All placements of a congruent copy mating one of its equal-length edges
    // to the open edge, filtered by cheap local checks (angle caps, node
    // constraints). Full legality is re-checked by try_place.
    std::vector<Placement> candidate_placements(const OpenEdge& e,
                                                const PlacementOptions& opts) const;

    // Validated placement; returns the new tile id, or nullopt if any
    // edge-to-edge invariant would break. On success one journal frame is
    // pushed.
    std::optional<int> try_place(const OpenEdge& e, const Placement& p,
                                 const PlacementOptions& opts);
    void undo_last();
    int journal_depth() const { return static_cast<int>(journal_.size()); }

    int max_ring() const;
    // Every tile with ring < depth has all edges mated and all nodes closed.
    bool complete_to_depth(int depth) const;

    // Full recheck of all invariants from scratch; throws PatchError.
    void validate() const;

    // Tile with >= 3 closed 3-valent nodes among the tiles whose nodes are all
    // closed; throws OpenNodesPresent when no tile qualifies for examination.
    std::optional<int> bagina_witness() const;

    // tiles with every incident node closed
    std::vector<int> interior_tiles() const;

    std::array<Vec2, 5> corners_for_pose(const Congruence& pose) const;

  private:
    struct EdgeEntry {
        int count = 0;
        std::array<std::pair<int, int>, 2> sides;  // (tile, slot)
    };
    using EdgeKey = std::pair<int, int>;

    struct JournalFrame {
        int tile_id;
        std::vector<int> new_nodes;
        std::vector<std::pair<int, double>> angle_added;  // node, degrees
        std::vector<EdgeKey> new_edges;
        std::vector<EdgeKey> mated_edges;
        std::vector<std::pair<int, int>> ring_lowered;  // tile, old ring
    };

    long long cell_key(const Vec2& p) const;
    std::vector<long long> segment_cells(const Vec2& a, const Vec2& b) const;
    int find_node(const Vec2& p) const;
    int add_node(const Vec2& p);
    bool corner_fits_node(int node_id, int label, double angle_deg,
                          const PlacementOptions& opts) const;
    bool point_on_some_edge_interior(const Vec2& p) const;
    bool segment_covers_other_node(const Vec2& a, const Vec2& b, int na, int nb) const;
    std::vector<int> nearby_tiles(const Vec2& lo, const Vec2& hi) const;

    PentagonShape proto_;
    Tolerances tol_;
    double snap_eps_;
    double cell_size_;
    double min_angle_;

    std::vector<PlacedTile> tiles_;
    std::vector<NodeRecord> nodes_;
    std::map<EdgeKey, EdgeEntry> edges_;
    std::unordered_map<long long, std::vector<int>> node_grid_;
    std::unordered_map<long long, std::vector<int>> tile_grid_;
    std::vector<JournalFrame> journal_;

    // label permutations (with chirality) fixing the prototile's shape
    struct ShapeSymmetry {
        std::array<int, 5> vertex_map;
        bool mirrored;
    };
    std::vector<ShapeSymmetry> symmetries_;
    bool any_constraint_ = false;

    friend class PatchInspector;
};

}  // namespace pentile

#include "pentile/patch.hpp"

#include <algorithm>
#include <cmath>

namespace pentile {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_dist(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double denom = ab.squaredNorm();
    if (denom == 0.0) return (p - a).norm();
    const double t = std::clamp((p - a).dot(ab) / denom, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

Patch::Patch(PentagonShape prototile, Tolerances tol)
    : proto_(std::move(prototile)), tol_(tol) {
    const double diam = proto_.diameter();
    snap_eps_ = std::max(tol_.len_tol_abs(diam), 1e-12 * diam);
    cell_size_ = diam * 0.5;
    min_angle_ = proto_.min_angle_deg();

    for (const auto& sigma : all_relabelings()) {
        bool ok = true;
        for (int v = 0; v < 5 && ok; ++v)
            ok = std::abs(proto_.angle_deg(sigma.map_vertex(v)) - proto_.angle_deg(v)) <=
                 tol_.angle_tol_deg;
        for (int e = 0; e < 5 && ok; ++e)
            ok = std::abs(proto_.edge_length(sigma.map_edge(e)) - proto_.edge_length(e)) <=
                 snap_eps_;
        if (ok) symmetries_.push_back({sigma.vertex_map, sigma.reflected});
    }
}

long long Patch::cell_key(const Vec2& p) const {
    const long long qx = static_cast<long long>(std::floor(p.x() / cell_size_));
    const long long qy = static_cast<long long>(std::floor(p.y() / cell_size_));
    return qx * 0x100000000LL + (qy & 0xffffffffLL);
}

int Patch::find_node(const Vec2& p) const {
    const long long qx = static_cast<long long>(std::floor(p.x() / cell_size_));
    const long long qy = static_cast<long long>(std::floor(p.y() / cell_size_));
    for (long long dx = -1; dx <= 1; ++dx) {
        for (long long dy = -1; dy <= 1; ++dy) {
            const long long key = (qx + dx) * 0x100000000LL + ((qy + dy) & 0xffffffffLL);
            auto it = node_grid_.find(key);
            if (it == node_grid_.end()) continue;
            for (int id : it->second)
                if ((nodes_[static_cast<size_t>(id)].pos - p).norm() <= snap_eps_) return id;
        }
    }
    return -1;
}

int Patch::add_node(const Vec2& p) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(NodeRecord{p, 0.0, {}, std::nullopt});
    node_grid_[cell_key(p)].push_back(id);
    return id;
}

std::array<Vec2, 5> Patch::corners_for_pose(const Congruence& pose) const {
    std::array<Vec2, 5> out;
    for (int i = 0; i < 5; ++i) out[static_cast<size_t>(i)] = pose.apply(proto_.vertex(i));
    return out;
}

int Patch::place_seed(const Congruence& pose) {
    if (!tiles_.empty()) throw PatchError("seed on a nonempty patch");
    PlacedTile t;
    t.pose = pose;
    t.mirrored = pose.mirrored;
    t.ring = 0;
    t.corner = corners_for_pose(pose);
    const int tile_id = 0;
    for (int i = 0; i < 5; ++i) {
        const int nid = add_node(t.corner[static_cast<size_t>(i)]);
        nodes_[static_cast<size_t>(nid)].angle_sum = proto_.angle_deg(i);
        nodes_[static_cast<size_t>(nid)].corners.push_back({tile_id, i});
        t.corner_node[static_cast<size_t>(i)] = nid;
    }
    tiles_.push_back(t);
    for (int s = 0; s < 5; ++s) {
        EdgeKey key{std::min(t.corner_node[static_cast<size_t>(s)],
                             t.corner_node[static_cast<size_t>(mod5(s + 1))]),
                    std::max(t.corner_node[static_cast<size_t>(s)],
                             t.corner_node[static_cast<size_t>(mod5(s + 1))])};
        EdgeEntry entry;
        entry.count = 1;
        entry.sides[0] = {tile_id, s};
        edges_[key] = entry;
    }
    Vec2 lo = t.corner[0], hi = t.corner[0];
    for (const auto& c : t.corner) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
    }
    for (long long qx = static_cast<long long>(std::floor(lo.x() / cell_size_));
         qx <= static_cast<long long>(std::floor(hi.x() / cell_size_)); ++qx)
        for (long long qy = static_cast<long long>(std::floor(lo.y() / cell_size_));
             qy <= static_cast<long long>(std::floor(hi.y() / cell_size_)); ++qy)
            tile_grid_[qx * 0x100000000LL + (qy & 0xffffffffLL)].push_back(tile_id);
    return tile_id;
}

void Patch::annotate_seed_node(int vertex_label, const NodeConstraint& c) {
    if (tiles_.empty()) throw PatchError("annotate on an empty patch");
    if (vertex_label < 0 || vertex_label >= 5) throw PatchError("bad vertex label");
    if (std::find(c.multiset.begin(), c.multiset.end(), vertex_label) == c.multiset.end())
        throw PatchError("constraint multiset must contain the anchored vertex");
    auto& node = nodes_[static_cast<size_t>(tiles_[0].corner_node[static_cast<size_t>(vertex_label)])];
    if (node.constraint) throw PatchError("vertex already constrained");
    node.constraint = c;
    any_constraint_ = true;
}

std::vector<Patch::OpenEdge> Patch::open_edges() const {
    std::vector<OpenEdge> out;
    for (const auto& [key, entry] : edges_) {
        if (entry.count != 1) continue;
        OpenEdge e;
        e.tile = entry.sides[0].first;
        e.slot = entry.sides[0].second;
        const auto& t = tiles_[static_cast<size_t>(e.tile)];
        e.node_u = t.corner_node[static_cast<size_t>(e.slot)];
        e.node_v = t.corner_node[static_cast<size_t>(mod5(e.slot + 1))];
        out.push_back(e);
    }
    return out;
}

bool Patch::corner_fits_node(int node_id, int label, double angle_deg,
                             const PlacementOptions& opts) const {
    const auto& node = nodes_[static_cast<size_t>(node_id)];
    if (node.closed(tol_.angle_tol_deg)) return false;
    const double new_sum = node.angle_sum + angle_deg;
    if (new_sum > 360.0 + tol_.angle_tol_deg) return false;
    if (node.constraint) {
        const auto& m = node.constraint->multiset;
        const int allowed = static_cast<int>(std::count(m.begin(), m.end(), label));
        int present = 0;
        for (const auto& [t, l] : node.corners)
            if (l == label) ++present;
        if (present + 1 > allowed) return false;
        if (node.valence() + 1 > 3) return false;
    }
    if (opts.corollary1_prune) {
        const bool closes = std::abs(new_sum - 360.0) <= tol_.angle_tol_deg;
        if (closes && node.valence() + 1 >= 5) return false;
    }
    return true;
}

std::vector<int> Patch::nearby_tiles(const Vec2& lo, const Vec2& hi) const {
    std::vector<int> out;
    for (long long qx = static_cast<long long>(std::floor(lo.x() / cell_size_)) - 1;
         qx <= static_cast<long long>(std::floor(hi.x() / cell_size_)) + 1; ++qx) {
        for (long long qy = static_cast<long long>(std::floor(lo.y() / cell_size_)) - 1;
             qy <= static_cast<long long>(std::floor(hi.y() / cell_size_)) + 1; ++qy) {
            auto it = tile_grid_.find(qx * 0x100000000LL + (qy & 0xffffffffLL));
            if (it == tile_grid_.end()) continue;
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Patch::point_on_some_edge_interior(const Vec2& p) const {
    for (int tid : nearby_tiles(p - Vec2(snap_eps_, snap_eps_), p + Vec2(snap_eps_, snap_eps_))) {
        const auto& t = tiles_[static_cast<size_t>(tid)];
        for (int s = 0; s < 5; ++s) {
            const Vec2& a = t.corner[static_cast<size_t>(s)];
            const Vec2& b = t.corner[static_cast<size_t>(mod5(s + 1))];
            if ((p - a).norm() <= snap_eps_ || (p - b).norm() <= snap_eps_) continue;
            if (point_segment_dist(p, a, b) <= snap_eps_) return true;
        }
    }
    return false;
}

bool Patch::segment_covers_other_node(const Vec2& a, const Vec2& b, int na, int nb) const {
    Vec2 lo = a.cwiseMin(b), hi = a.cwiseMax(b);
    const long long qx0 = static_cast<long long>(std::floor(lo.x() / cell_size_)) - 1;
    const long long qx1 = static_cast<long long>(std::floor(hi.x() / cell_size_)) + 1;
    const long long qy0 = static_cast<long long>(std::floor(lo.y() / cell_size_)) - 1;
    const long long qy1 = static_cast<long long>(std::floor(hi.y() / cell_size_)) + 1;
    for (long long qx = qx0; qx <= qx1; ++qx) {
        for (long long qy = qy0; qy <= qy1; ++qy) {
            auto it = node_grid_.find(qx * 0x100000000LL + (qy & 0xffffffffLL));
            if (it == node_grid_.end()) continue;
            for (int id : it->second) {
                if (id == na || id == nb) continue;
                if (point_segment_dist(nodes_[static_cast<size_t>(id)].pos, a, b) <= snap_eps_)
                    return true;
            }
        }
    }
    return false;
}

std::vector<Patch::Placement> Patch::candidate_placements(const OpenEdge& e,
                                                          const PlacementOptions& opts) const {
    std::vector<Placement> out;
    const auto& owner = tiles_[static_cast<size_t>(e.tile)];
    const Vec2 U = nodes_[static_cast<size_t>(e.node_u)].pos;
    const Vec2 V = nodes_[static_cast<size_t>(e.node_v)].pos;
    const double L = (V - U).norm();

    Vec2 owner_centroid = Vec2::Zero();
    for (const auto& c : owner.corner) owner_centroid += c;
    owner_centroid /= 5.0;
    const double side_t = cross2(V - U, owner_centroid - U) > 0 ? 1.0 : -1.0;

    std::vector<std::array<long long, 5>> seen_geometries;

    for (int k = 0; k < 5; ++k) {
        if (std::abs(proto_.edge_length(k) - L) > std::max(snap_eps_ * 4.0, 1e-9 * L)) continue;
        for (int mi = 0; mi < 2; ++mi) {
            const bool mirrored = mi == 1;
            if (mirrored && !opts.allow_reflections) continue;

            // interior side of the new copy relative to its directed mated
            // edge: direct copies are CCW (left), mirrored CW (right)
            const double side_new_forward = mirrored ? -1.0 : 1.0;
            // map (p0,p1) -> (U,V) keeps direction; -> (V,U) flips the side
            const bool flip = (side_new_forward != -side_t);
            const Vec2 t0 = flip ? V : U;
            const Vec2 t1 = flip ? U : V;

            Vec2 q0 = proto_.vertex(k), q1 = proto_.vertex(mod5(k + 1));
            if (mirrored) {
                q0.y() = -q0.y();
                q1.y() = -q1.y();
            }
            const Vec2 src = q1 - q0, dst = t1 - t0;
            const double theta = std::atan2(cross2(src, dst), src.dot(dst)) * 180.0 / M_PI;
            Congruence pose;
            pose.mirrored = mirrored;
            pose.rotation_deg = theta;
            pose.translation = t0 - pose.linear() * proto_.vertex(k);

            auto corners = corners_for_pose(pose);
            corners[static_cast<size_t>(k)] = t0;
            corners[static_cast<size_t>(mod5(k + 1))] = t1;

            // cheap local checks on every corner that lands on a node
            bool ok = true;
            for (int i = 0; i < 5 && ok; ++i) {
                const int nid = find_node(corners[static_cast<size_t>(i)]);
                if (nid >= 0) ok = corner_fits_node(nid, i, proto_.angle_deg(i), opts);
            }
            if (!ok) continue;

            if (!any_constraint_) {
                std::array<long long, 5> sig;
                for (int i = 0; i < 5; ++i) {
                    const Vec2& c = corners[static_cast<size_t>(i)];
                    sig[static_cast<size_t>(i)] =
                        static_cast<long long>(std::llround(c.x() / snap_eps_ * 1e-3)) * 2000003LL +
                        static_cast<long long>(std::llround(c.y() / snap_eps_ * 1e-3));
                }
                std::sort(sig.begin(), sig.end());
                if (std::find(seen_geometries.begin(), seen_geometries.end(), sig) !=
                    seen_geometries.end())
                    continue;
                seen_geometries.push_back(sig);
            }

            out.push_back(Placement{k, mirrored, pose});
        }
    }
    return out;
}

std::optional<int> Patch::try_place(const OpenEdge& e, const Placement& p,
                                    const PlacementOptions& opts) {
    const Vec2 U = nodes_[static_cast<size_t>(e.node_u)].pos;
    const Vec2 V = nodes_[static_cast<size_t>(e.node_v)].pos;

    auto corners = corners_for_pose(p.pose);
    // snap the mated corners onto the open edge's nodes
    {
        const int k = p.proto_edge;
        const int k1 = mod5(k + 1);
        auto& ck = corners[static_cast<size_t>(k)];
        auto& ck1 = corners[static_cast<size_t>(k1)];
        if ((ck - U).norm() > (ck - V).norm()) {
            if ((ck - V).norm() > snap_eps_ || (ck1 - U).norm() > snap_eps_) return std::nullopt;
            ck = V;
            ck1 = U;
        } else {
            if ((ck - U).norm() > snap_eps_ || (ck1 - V).norm() > snap_eps_) return std::nullopt;
            ck = U;
            ck1 = V;
        }
    }

    // resolve corner -> node, all checks before any mutation
    std::array<int, 5> corner_node;
    for (int i = 0; i < 5; ++i) {
        const Vec2& pos = corners[static_cast<size_t>(i)];
        const int nid = find_node(pos);
        if (nid >= 0) {
            if (!corner_fits_node(nid, i, proto_.angle_deg(i), opts)) return std::nullopt;
            corner_node[static_cast<size_t>(i)] = nid;
        } else {
            if (point_on_some_edge_interior(pos)) return std::nullopt;
            corner_node[static_cast<size_t>(i)] = -1;
        }
    }

    // edge compatibility: a mated edge entry must currently be half-open
    for (int s = 0; s < 5; ++s) {
        const int a = corner_node[static_cast<size_t>(s)];
        const int b = corner_node[static_cast<size_t>(mod5(s + 1))];
        if (a >= 0 && b >= 0) {
            auto it = edges_.find({std::min(a, b), std::max(a, b)});
            if (it != edges_.end() && it->second.count >= 2) return std::nullopt;
            if (it == edges_.end() &&
                segment_covers_other_node(corners[static_cast<size_t>(s)],
                                          corners[static_cast<size_t>(mod5(s + 1))], a, b))
                return std::nullopt;
        } else {
            if (segment_covers_other_node(corners[static_cast<size_t>(s)],
                                          corners[static_cast<size_t>(mod5(s + 1))], a, b))
                return std::nullopt;
        }
    }

    // interior overlap against nearby tiles
    Vec2 lo = corners[0], hi = corners[0];
    for (const auto& c : corners) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
    }
    for (int tid : nearby_tiles(lo, hi)) {
        if (overlap_points(corners, tiles_[static_cast<size_t>(tid)].corner, snap_eps_) ==
            OverlapKind::InteriorsIntersect)
            return std::nullopt;
    }

    // ---- commit ----
    JournalFrame frame;
    const int tile_id = static_cast<int>(tiles_.size());
    frame.tile_id = tile_id;

    PlacedTile t;
    t.pose = p.pose;
    t.mirrored = p.mirrored;
    t.corner = corners;
    for (int i = 0; i < 5; ++i) {
        int nid = corner_node[static_cast<size_t>(i)];
        if (nid < 0) {
            nid = add_node(corners[static_cast<size_t>(i)]);
            frame.new_nodes.push_back(nid);
        }
        auto& node = nodes_[static_cast<size_t>(nid)];
        node.angle_sum += proto_.angle_deg(i);
        node.corners.push_back({tile_id, i});
        frame.angle_added.push_back({nid, proto_.angle_deg(i)});
        t.corner_node[static_cast<size_t>(i)] = nid;
    }

    int ring = INT32_MAX;
    for (int s = 0; s < 5; ++s) {
        const int a = t.corner_node[static_cast<size_t>(s)];
        const int b = t.corner_node[static_cast<size_t>(mod5(s + 1))];
        const EdgeKey key{std::min(a, b), std::max(a, b)};
        auto it = edges_.find(key);
        if (it == edges_.end()) {
            EdgeEntry entry;
            entry.count = 1;
            entry.sides[0] = {tile_id, s};
            edges_[key] = entry;
            frame.new_edges.push_back(key);
        } else {
            it->second.sides[1] = {tile_id, s};
            it->second.count = 2;
            frame.mated_edges.push_back(key);
            ring = std::min(ring, tiles_[static_cast<size_t>(it->second.sides[0].first)].ring + 1);
        }
    }
    t.ring = ring == INT32_MAX ? 0 : ring;
    tiles_.push_back(t);

    for (long long qx = static_cast<long long>(std::floor(lo.x() / cell_size_));
         qx <= static_cast<long long>(std::floor(hi.x() / cell_size_)); ++qx)
        for (long long qy = static_cast<long long>(std::floor(lo.y() / cell_size_));
             qy <= static_cast<long long>(std::floor(hi.y() / cell_size_)); ++qy)
            tile_grid_[qx * 0x100000000LL + (qy & 0xffffffffLL)].push_back(tile_id);

    // relax rings through the new adjacency
    {
        std::vector<int> queue{tile_id};
        while (!queue.empty()) {
            const int cur = queue.back();
            queue.pop_back();
            const auto& ct = tiles_[static_cast<size_t>(cur)];
            for (int s = 0; s < 5; ++s) {
                const int a = ct.corner_node[static_cast<size_t>(s)];
                const int b = ct.corner_node[static_cast<size_t>(mod5(s + 1))];
                auto it = edges_.find({std::min(a, b), std::max(a, b)});
                if (it == edges_.end() || it->second.count != 2) continue;
                const int other = it->second.sides[0].first == cur ? it->second.sides[1].first
                                                                   : it->second.sides[0].first;
                auto& ot = tiles_[static_cast<size_t>(other)];
                if (ot.ring > tiles_[static_cast<size_t>(cur)].ring + 1) {
                    frame.ring_lowered.push_back({other, ot.ring});
                    ot.ring = tiles_[static_cast<size_t>(cur)].ring + 1;
                    queue.push_back(other);
                }
            }
        }
    }

    journal_.push_back(std::move(frame));

    // forward check: an open node that can no longer accept any corner blocks
    // completion of any interior tile it touches
    if (opts.interior_ring_limit >= 0) {
        for (const auto& [nid, added] : journal_.back().angle_added) {
            const auto& node = nodes_[static_cast<size_t>(nid)];
            if (node.closed(tol_.angle_tol_deg)) continue;
            if (node.angle_sum + min_angle_ <= 360.0 + tol_.angle_tol_deg) continue;
            for (const auto& [tid, label] : node.corners) {
                if (tiles_[static_cast<size_t>(tid)].ring < opts.interior_ring_limit) {
                    undo_last();
                    return std::nullopt;
                }
            }
        }
    }
    return tile_id;
}

void Patch::undo_last() {
    if (journal_.empty()) throw PatchError("undo on empty journal");
    const JournalFrame frame = journal_.back();
    journal_.pop_back();

    for (const auto& [tid, old_ring] : frame.ring_lowered)
        tiles_[static_cast<size_t>(tid)].ring = old_ring;

    for (const auto& key : frame.mated_edges) {
        auto& entry = edges_.at(key);
        entry.count = 1;
        entry.sides[1] = {-1, -1};
    }
    for (const auto& key : frame.new_edges) edges_.erase(key);

    for (auto it = frame.angle_added.rbegin(); it != frame.angle_added.rend(); ++it) {
        auto& node = nodes_[static_cast<size_t>(it->first)];
        node.angle_sum -= it->second;
        node.corners.pop_back();
    }
    for (auto it = frame.new_nodes.rbegin(); it != frame.new_nodes.rend(); ++it) {
        const int nid = *it;
        if (nid != static_cast<int>(nodes_.size()) - 1) throw PatchError("journal corruption");
        auto& bucket = node_grid_.at(cell_key(nodes_[static_cast<size_t>(nid)].pos));
        bucket.erase(std::remove(bucket.begin(), bucket.end(), nid), bucket.end());
        nodes_.pop_back();
    }

    const int tile_id = frame.tile_id;
    if (tile_id != static_cast<int>(tiles_.size()) - 1) throw PatchError("journal corruption");
    const auto& t = tiles_[static_cast<size_t>(tile_id)];
    Vec2 lo = t.corner[0], hi = t.corner[0];
    for (const auto& c : t.corner) {
        lo = lo.cwiseMin(c);
        hi = hi.cwiseMax(c);
    }
    for (long long qx = static_cast<long long>(std::floor(lo.x() / cell_size_));
         qx <= static_cast<long long>(std::floor(hi.x() / cell_size_)); ++qx)
        for (long long qy = static_cast<long long>(std::floor(lo.y() / cell_size_));
             qy <= static_cast<long long>(std::floor(hi.y() / cell_size_)); ++qy) {
            auto& bucket = tile_grid_.at(qx * 0x100000000LL + (qy & 0xffffffffLL));
            bucket.erase(std::remove(bucket.begin(), bucket.end(), tile_id), bucket.end());
        }
    tiles_.pop_back();
}

int Patch::max_ring() const {
    int m = 0;
    for (const auto& t : tiles_) m = std::max(m, t.ring);
    return m;
}

bool Patch::complete_to_depth(int depth) const {
    if (tiles_.empty()) return false;
    for (const auto& t : tiles_) {
        if (t.ring >= depth) continue;
        for (int i = 0; i < 5; ++i) {
            if (!nodes_[static_cast<size_t>(t.corner_node[static_cast<size_t>(i)])].closed(
                    tol_.angle_tol_deg))
                return false;
        }
        for (int s = 0; s < 5; ++s) {
            const int a = t.corner_node[static_cast<size_t>(s)];
            const int b = t.corner_node[static_cast<size_t>(mod5(s + 1))];
            auto it = edges_.find({std::min(a, b), std::max(a, b)});
            if (it == edges_.end() || it->second.count != 2) return false;
        }
    }
    return true;
}

std::vector<int> Patch::interior_tiles() const {
    std::vector<int> out;
    for (int tid = 0; tid < tile_count(); ++tid) {
        const auto& t = tiles_[static_cast<size_t>(tid)];
        bool all_closed = true;
        for (int i = 0; i < 5 && all_closed; ++i)
            all_closed = nodes_[static_cast<size_t>(t.corner_node[static_cast<size_t>(i)])].closed(
                tol_.angle_tol_deg);
        if (all_closed) out.push_back(tid);
    }
    return out;
}

std::optional<int> Patch::bagina_witness() const {
    const auto interior = interior_tiles();
    if (interior.empty()) throw OpenNodesPresent("no tile has all incident nodes closed");
    for (int tid : interior) {
        const auto& t = tiles_[static_cast<size_t>(tid)];
        int three_valent = 0;
        for (int i = 0; i < 5; ++i) {
            const auto& node = nodes_[static_cast<size_t>(t.corner_node[static_cast<size_t>(i)])];
            if (node.closed(tol_.angle_tol_deg) && node.valence() == 3) ++three_valent;
        }
        if (three_valent >= 3) return tid;
    }
    return std::nullopt;
}

void Patch::validate() const {
    for (const auto& t : tiles_) {
        for (int s = 0; s < 5; ++s) {
            const double len =
                (t.corner[static_cast<size_t>(mod5(s + 1))] - t.corner[static_cast<size_t>(s)])
                    .norm();
            if (std::abs(len - proto_.edge_length(s)) > snap_eps_ * 8)
                throw PatchError("placed tile not congruent to prototile");
        }
    }
    for (int i = 0; i < tile_count(); ++i) {
        for (int j = i + 1; j < tile_count(); ++j) {
            if (overlap_points(tiles_[static_cast<size_t>(i)].corner,
                               tiles_[static_cast<size_t>(j)].corner,
                               snap_eps_) == OverlapKind::InteriorsIntersect)
                throw PatchError("tile interiors intersect");
        }
    }
    for (const auto& [key, entry] : edges_) {
        if (entry.count < 1 || entry.count > 2) throw PatchError("edge entry count");
        const Vec2 a = nodes_[static_cast<size_t>(key.first)].pos;
        const Vec2 b = nodes_[static_cast<size_t>(key.second)].pos;
        for (int side = 0; side < entry.count; ++side) {
            const auto [tid, slot] = entry.sides[static_cast<size_t>(side)];
            if (std::abs((a - b).norm() - proto_.edge_length(slot)) > snap_eps_ * 8)
                throw PatchError("edge length mismatch");
        }
        for (int nid = 0; nid < node_count(); ++nid) {
            if (nid == key.first || nid == key.second) continue;
            if (point_segment_dist(nodes_[static_cast<size_t>(nid)].pos, a, b) <= snap_eps_)
                throw PatchError("node lies inside an edge: not edge-to-edge");
        }
    }
    for (int nid = 0; nid < node_count(); ++nid) {
        const auto& node = nodes_[static_cast<size_t>(nid)];
        double sum = 0.0;
        for (const auto& [tid, label] : node.corners) {
            sum += proto_.angle_deg(label);
            const Vec2 cp = tiles_[static_cast<size_t>(tid)].corner[static_cast<size_t>(label)];
            if ((cp - node.pos).norm() > snap_eps_) throw PatchError("corner far from its node");
        }
        if (std::abs(sum - node.angle_sum) > tol_.angle_tol_deg * 8)
            throw PatchError("node angle bookkeeping drifted");
        if (node.angle_sum > 360.0 + tol_.angle_tol_deg) throw PatchError("node angle overflow");
        if (node.closed(tol_.angle_tol_deg) && node.valence() < 3)
            throw PatchError("closed node with valence < 3");
    }
}

}  // namespace pentile

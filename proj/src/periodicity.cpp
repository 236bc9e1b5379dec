#include "pentile/periodicity.hpp"

#include <algorithm>
#include <cmath>

namespace pentile {

namespace {

double wrap01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

double torus_dist1(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

// Translation-invariant geometric identity of a placed tile: corner offsets
// from the centroid, sorted. Two tiles are translates of one another exactly
// when their signatures agree, label decorations aside.
struct TileSignature {
    std::array<Vec2, 5> rel;
    Vec2 centroid;
};

TileSignature signature_of(const PlacedTile& t) {
    TileSignature sig;
    sig.centroid = Vec2::Zero();
    for (const auto& c : t.corner) sig.centroid += c;
    sig.centroid /= 5.0;
    for (int i = 0; i < 5; ++i) sig.rel[static_cast<size_t>(i)] = t.corner[static_cast<size_t>(i)] - sig.centroid;
    std::sort(sig.rel.begin(), sig.rel.end(), [](const Vec2& a, const Vec2& b) {
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    });
    return sig;
}

bool signatures_match(const TileSignature& a, const TileSignature& b, double eps) {
    // corners are well separated, so after sorting a direct comparison works
    // unless two offsets tie in x within drift; compare as multisets to be
    // order-robust
    std::array<bool, 5> used{};
    for (int i = 0; i < 5; ++i) {
        bool found = false;
        for (int j = 0; j < 5 && !found; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            if ((a.rel[static_cast<size_t>(i)] - b.rel[static_cast<size_t>(j)]).norm() <= eps) {
                used[static_cast<size_t>(j)] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool point_strictly_in_tile(const PlacedTile& t, const Vec2& p, double eps) {
    int sign = 0;
    for (int i = 0; i < 5; ++i) {
        const Vec2& a = t.corner[static_cast<size_t>(i)];
        const Vec2& b = t.corner[static_cast<size_t>(mod5(i + 1))];
        const double cr = (b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x());
        if (std::abs(cr) <= eps) return false;
        const int s = cr > 0 ? 1 : -1;
        if (sign == 0) sign = s;
        else if (s != sign) return false;
    }
    return true;
}

}  // namespace

std::optional<PeriodLattice> detect_periods(const Patch& patch, const DetectOptions& opts) {
    if (patch.max_ring() < opts.min_depth)
        throw PatchTooSmall("patch depth " + std::to_string(patch.max_ring()) +
                            " below minimum " + std::to_string(opts.min_depth));

    const double pos_tol = patch.snap_eps() * 8;
    const int n = patch.tile_count();
    std::vector<TileSignature> sigs;
    sigs.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) sigs.push_back(signature_of(patch.tile(i)));

    // candidate translations between geometrically identical tiles
    std::vector<Vec2> candidates;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!signatures_match(sigs[static_cast<size_t>(i)], sigs[static_cast<size_t>(j)], pos_tol))
                continue;
            const Vec2 t = sigs[static_cast<size_t>(j)].centroid - sigs[static_cast<size_t>(i)].centroid;
            if (t.norm() <= pos_tol) continue;
            bool dup = false;
            for (const auto& c : candidates)
                if ((c - t).norm() <= pos_tol) { dup = true; break; }
            if (!dup) candidates.push_back(t);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Vec2& a, const Vec2& b) {
        if (std::abs(a.norm() - b.norm()) > 1e-12) return a.norm() < b.norm();
        if (a.x() != b.x()) return a.x() < b.x();
        return a.y() < b.y();
    });
    if (static_cast<int>(candidates.size()) > opts.max_candidates)
        candidates.resize(static_cast<size_t>(opts.max_candidates));

    // A candidate fails if some translated tile should visibly be in the
    // patch (its centroid lands strictly inside a placed tile) but no
    // geometrically matching tile sits there; translates falling onto the
    // ragged boundary prove nothing. build_torus is the sound verifier.
    const int core_ring = patch.max_ring() - 1;
    auto survives = [&](const Vec2& t) {
        int matches = 0;
        for (int i = 0; i < n; ++i) {
            const Vec2 moved = sigs[static_cast<size_t>(i)].centroid + t;
            int host = -1;
            for (int j = 0; j < n; ++j) {
                if (patch.tile(j).ring > core_ring) continue;
                if (point_strictly_in_tile(patch.tile(j), moved, pos_tol)) { host = j; break; }
            }
            if (host < 0) continue;  // boundary or outside: proves nothing
            if (!signatures_match(sigs[static_cast<size_t>(i)], sigs[static_cast<size_t>(host)], pos_tol))
                return false;
            if ((sigs[static_cast<size_t>(host)].centroid - moved).norm() > pos_tol) return false;
            ++matches;
        }
        return matches >= 3;
    };

    std::optional<Vec2> t1;
    std::optional<Vec2> t2;
    for (const auto& c : candidates) {
        if (!t1) {
            if (survives(c)) t1 = c;
            continue;
        }
        const double cr = t1->x() * c.y() - t1->y() * c.x();
        if (std::abs(cr) <= opts.parallel_eps * t1->norm() * c.norm()) continue;
        if (survives(c)) { t2 = c; break; }
    }
    if (!t1 || !t2) return std::nullopt;

    // Gauss reduction for a short basis
    Vec2 u = *t1, v = *t2;
    for (int iter = 0; iter < 64; ++iter) {
        if (u.norm() > v.norm()) std::swap(u, v);
        const double mu = std::round(v.dot(u) / u.squaredNorm());
        if (mu == 0.0) break;
        v -= mu * u;
    }
    if (u.x() * v.y() - u.y() * v.x() < 0) v = -v;
    return PeriodLattice{u, v};
}

TorusTiling build_torus(const Patch& patch, const PeriodLattice& lattice) {
    const double det = lattice.det();
    const double area = patch.prototile().area();
    if (std::abs(det) <= 0.0) throw NotInvariant("degenerate lattice");

    Mat2 L;
    L << lattice.t1.x(), lattice.t2.x(), lattice.t1.y(), lattice.t2.y();
    const Mat2 Linv = L.inverse();
    const double frac_eps = patch.snap_eps() * 8 / std::min(lattice.t1.norm(), lattice.t2.norm());
    const double pos_tol = patch.snap_eps() * 8;

    auto to_frac = [&](const Vec2& p) {
        const Vec2 c = Linv * p;
        return Vec2(wrap01(c.x()), wrap01(c.y()));
    };
    auto frac_close = [&](const Vec2& a, const Vec2& b, double eps) {
        return torus_dist1(a.x(), b.x()) < eps && torus_dist1(a.y(), b.y()) < eps;
    };

    TorusTiling torus;
    torus.lattice = lattice;
    torus.prototile = patch.prototile();
    torus.tol = patch.tolerances();

    // Half-open membership with snapping: lattice coordinates of the tile
    // centroid in [-eps, 1-eps). Centroids are distinct modulo the lattice,
    // unlike first-vertex anchors, which distinct tiles may share.
    for (int i = 0; i < patch.tile_count(); ++i) {
        Vec2 centroid = Vec2::Zero();
        for (const auto& c : patch.tile(i).corner) centroid += c;
        const Vec2 c = Linv * (centroid / 5.0);
        if (std::floor(c.x() + frac_eps) == 0.0 && std::floor(c.y() + frac_eps) == 0.0)
            torus.tiles.push_back(patch.tile(i));
    }
    const int n = static_cast<int>(torus.tiles.size());
    if (n == 0) throw NotInvariant("empty fundamental domain");

    if (std::abs(n * area - std::abs(det)) > 1e-6 * std::abs(det))
        throw AreaMismatch("tiles x area = " + std::to_string(n * area) + " vs |det| = " +
                           std::to_string(std::abs(det)));

    // Every domain tile must reappear, geometrically identical, at its four
    // generator translates wherever those land inside the solid core of the
    // patch; a mismatching tile there refutes lattice invariance.
    {
        std::vector<TileSignature> patch_sigs;
        for (int i = 0; i < patch.tile_count(); ++i)
            patch_sigs.push_back(signature_of(patch.tile(i)));
        const int core_ring = patch.max_ring() - 1;
        const std::array<Vec2, 4> generators{lattice.t1, Vec2(-lattice.t1), lattice.t2,
                                             Vec2(-lattice.t2)};
        for (const auto& t : torus.tiles) {
            const TileSignature sig = signature_of(t);
            for (const Vec2& g : generators) {
                const Vec2 target = sig.centroid + g;
                int host = -1;
                for (int j = 0; j < patch.tile_count(); ++j) {
                    if (patch.tile(j).ring > core_ring) continue;
                    if (point_strictly_in_tile(patch.tile(j), target, pos_tol)) {
                        host = j;
                        break;
                    }
                }
                if (host < 0) continue;  // lands on the ragged boundary
                if (!signatures_match(sig, patch_sigs[static_cast<size_t>(host)], pos_tol) ||
                    (patch_sigs[static_cast<size_t>(host)].centroid - target).norm() > pos_tol)
                    throw NotInvariant("tile translate missing from patch");
            }
        }
    }

    // matings modulo the lattice: wrapped edge midpoints must pair up exactly
    struct WEdge {
        int tile, slot;
        Vec2 mid_frac;
        Vec2 a_frac, b_frac;
    };
    std::vector<WEdge> wedges;
    for (int j = 0; j < n; ++j) {
        const auto& t = torus.tiles[static_cast<size_t>(j)];
        for (int s = 0; s < 5; ++s) {
            const Vec2 a = t.corner[static_cast<size_t>(s)];
            const Vec2 b = t.corner[static_cast<size_t>(mod5(s + 1))];
            wedges.push_back({j, s, to_frac(0.5 * (a + b)), to_frac(a), to_frac(b)});
        }
    }
    torus.mate.assign(static_cast<size_t>(n), {});
    std::vector<int> partner(wedges.size(), -1);
    for (size_t i = 0; i < wedges.size(); ++i) {
        if (partner[i] >= 0) continue;
        int found = -1;
        for (size_t k = i + 1; k < wedges.size(); ++k) {
            if (partner[k] >= 0) continue;
            if (!frac_close(wedges[i].mid_frac, wedges[k].mid_frac, frac_eps * 4)) continue;
            const bool ends = (frac_close(wedges[i].a_frac, wedges[k].a_frac, frac_eps * 4) &&
                               frac_close(wedges[i].b_frac, wedges[k].b_frac, frac_eps * 4)) ||
                              (frac_close(wedges[i].a_frac, wedges[k].b_frac, frac_eps * 4) &&
                               frac_close(wedges[i].b_frac, wedges[k].a_frac, frac_eps * 4));
            if (!ends) continue;
            found = static_cast<int>(k);
            break;
        }
        if (found < 0)
            throw OpenBoundary("edge fails to mate modulo the lattice: tile " +
                               std::to_string(wedges[i].tile) + " slot " +
                               std::to_string(wedges[i].slot));
        partner[i] = found;
        partner[static_cast<size_t>(found)] = static_cast<int>(i);
    }
    for (size_t i = 0; i < wedges.size(); ++i) {
        const auto& me = wedges[i];
        const auto& other = wedges[static_cast<size_t>(partner[i])];
        torus.mate[static_cast<size_t>(me.tile)][static_cast<size_t>(me.slot)] = {other.tile,
                                                                                  other.slot};
    }

    // quotient nodes: cluster the 5n corners by torus position
    std::vector<Vec2> fracs(static_cast<size_t>(5 * n));
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < 5; ++l)
            fracs[static_cast<size_t>(5 * j + l)] =
                to_frac(torus.tiles[static_cast<size_t>(j)].corner[static_cast<size_t>(l)]);

    std::vector<int> cluster(static_cast<size_t>(5 * n), -1);
    torus.corner_node.assign(static_cast<size_t>(n), {});
    int next_node = 0;
    for (int idx = 0; idx < 5 * n; ++idx) {
        if (cluster[static_cast<size_t>(idx)] >= 0) continue;
        const int id = next_node++;
        for (int k = idx; k < 5 * n; ++k) {
            if (cluster[static_cast<size_t>(k)] >= 0) continue;
            if (frac_close(fracs[static_cast<size_t>(idx)], fracs[static_cast<size_t>(k)],
                           frac_eps * 4))
                cluster[static_cast<size_t>(k)] = id;
        }
    }
    torus.nodes.assign(static_cast<size_t>(next_node), {});
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < 5; ++l) {
            const int id = cluster[static_cast<size_t>(5 * j + l)];
            torus.corner_node[static_cast<size_t>(j)][static_cast<size_t>(l)] = id;
            torus.nodes[static_cast<size_t>(id)].corners.push_back({j, l});
        }
    }
    for (const auto& node : torus.nodes) {
        double sum = 0.0;
        for (const auto& [j, l] : node.corners) sum += patch.prototile().angle_deg(l);
        if (std::abs(sum - 360.0) > patch.tolerances().angle_tol_deg)
            throw OpenBoundary("quotient node angle sum " + std::to_string(sum));
        if (node.valence() < 3) throw OpenBoundary("quotient node valence < 3");
    }
    return torus;
}

Rational DensityReport::corner_identity_lhs() const {
    Rational sum(0);
    for (const auto& [k, d] : density) sum += d * Rational(k);
    return sum;
}

DensityReport node_density(const TorusTiling& torus) {
    DensityReport rep;
    rep.pentagons = static_cast<int>(torus.tiles.size());
    for (const auto& node : torus.nodes) ++rep.node_counts[node.valence()];
    long long corner_total = 0;
    for (const auto& [k, c] : rep.node_counts) {
        rep.density[k] = Rational(c, rep.pentagons);
        corner_total += static_cast<long long>(k) * c;
    }
    if (corner_total != 5LL * rep.pentagons)
        throw FalsificationError("corner identity violated: " + std::to_string(corner_total) +
                                 " != 5 * " + std::to_string(rep.pentagons));
    return rep;
}

namespace {

int count_3valent_corners(const TorusTiling& torus, int tile) {
    int c = 0;
    for (int l = 0; l < 5; ++l) {
        const int nid = torus.corner_node[static_cast<size_t>(tile)][static_cast<size_t>(l)];
        if (torus.nodes[static_cast<size_t>(nid)].valence() == 3) ++c;
    }
    return c;
}

}  // namespace

int bagina_witness(const TorusTiling& torus) {
    for (int j = 0; j < static_cast<int>(torus.tiles.size()); ++j)
        if (count_3valent_corners(torus, j) >= 3) return j;
    throw FalsificationError(
        "no tile with three 3-valent nodes on a verified torus (Bagina witness missing)");
}

std::optional<int> lemma1_check(const TorusTiling& torus) {
    bool high_valence = false;
    for (const auto& node : torus.nodes)
        if (node.valence() >= 5) { high_valence = true; break; }
    if (!high_valence) return std::nullopt;
    for (int j = 0; j < static_cast<int>(torus.tiles.size()); ++j)
        if (count_3valent_corners(torus, j) >= 4) return j;
    throw FalsificationError(
        "5-valent node present but no tile with four 3-valent nodes (Lemma 1 falsified)");
}

}  // namespace pentile

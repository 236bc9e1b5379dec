#include "pentile/geometry.hpp"

#include <cmath>

namespace pentile {

namespace {
constexpr double kDegToRad = M_PI / 180.0;

Vec2 unit(double heading_deg) {
    const double r = heading_deg * kDegToRad;
    return Vec2(std::cos(r), std::sin(r));
}
}  // namespace

std::array<Relabeling, 10> all_relabelings() {
    std::array<Relabeling, 10> out;
    for (int k = 0; k < 5; ++k) {
        Relabeling rot;
        for (int v = 0; v < 5; ++v) rot.vertex_map[v] = mod5(v + k);
        rot.reflected = false;
        out[k] = rot;
        Relabeling refl;
        for (int v = 0; v < 5; ++v) refl.vertex_map[v] = mod5(k - v);
        refl.reflected = true;
        out[5 + k] = refl;
    }
    return out;
}

std::array<double, 5> edge_headings(const AngleVector& angles) {
    std::array<double, 5> h;
    h[0] = 0.0;
    for (int i = 1; i < 5; ++i) h[i] = h[i - 1] + (180.0 - angles.deg(i));
    return h;
}

Vec2 closure_defect(const AngleVector& angles, const EdgeVector& edges) {
    const auto h = edge_headings(angles);
    Vec2 sum = Vec2::Zero();
    for (int i = 0; i < 5; ++i) sum += edges.len(i) * unit(h[i]);
    return sum;
}

double PentagonShape::diameter() const {
    double best = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j)
            best = std::max(best, (vertices[i] - vertices[j]).norm());
    return best;
}

double PentagonShape::area() const {
    double twice = 0.0;
    for (int i = 0; i < 5; ++i) {
        const Vec2& p = vertices[i];
        const Vec2& q = vertices[(i + 1) % 5];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * twice;
}

Vec2 PentagonShape::centroid() const {
    Vec2 c = Vec2::Zero();
    for (const auto& v : vertices) c += v;
    return c / 5.0;
}

PentagonShape build_pentagon(const AngleVector& angles, const EdgeVector& edges,
                             const Tolerances& tol) {
    if (!angles.sums_to_540(tol.angle_tol_deg))
        throw NotClosed("angle sum is not 540 degrees");
    if (!angles.all_convex())
        throw NotConvex("interior angle outside (0, 180)");
    if (!edges.all_positive())
        throw NotClosed("nonpositive edge length");

    PentagonShape shape;
    shape.angles = angles;
    shape.edges = edges;
    const auto h = edge_headings(angles);
    shape.vertices[0] = Vec2::Zero();
    for (int i = 0; i < 4; ++i)
        shape.vertices[i + 1] = shape.vertices[i] + edges.len(i) * unit(h[i]);

    const Vec2 defect = shape.vertices[4] + edges.len(4) * unit(h[4]);
    const double scale = edges.len.maxCoeff();
    if (defect.norm() > std::max(tol.len_tol_abs(2.0 * scale), 1e-12 * scale))
        throw NotClosed("closure defect " + std::to_string(defect.norm()));
    return shape;
}

Mat2 Congruence::linear() const {
    const double r = rotation_deg * kDegToRad;
    Mat2 rot;
    rot << std::cos(r), -std::sin(r), std::sin(r), std::cos(r);
    if (mirrored) {
        Mat2 m;
        m << 1, 0, 0, -1;
        return rot * m;
    }
    return rot;
}

Congruence Congruence::inverse() const {
    Congruence inv;
    if (!mirrored) {
        inv.rotation_deg = -rotation_deg;
        inv.mirrored = false;
    } else {
        // (R M)^-1 = M R^T = R(-..)M  -> same rotation angle, still mirrored
        inv.rotation_deg = rotation_deg;
        inv.mirrored = true;
    }
    inv.translation = -(inv.linear() * translation);
    return inv;
}

Congruence Congruence::then(const Congruence& second) const {
    Congruence out;
    out.mirrored = (mirrored != second.mirrored);
    out.rotation_deg = second.mirrored ? second.rotation_deg - rotation_deg
                                       : second.rotation_deg + rotation_deg;
    out.rotation_deg = std::remainder(out.rotation_deg, 360.0);
    out.translation = second.apply(translation);
    return out;
}

OverlapKind overlap_points(const std::array<Vec2, 5>& p1, const std::array<Vec2, 5>& p2,
                           double eps) {
    // Signed separation along every edge normal of both polygons. Positive
    // means a separating gap, negative means overlap along that axis.
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](const std::array<Vec2, 5>& poly, const std::array<Vec2, 5>& a,
                        const std::array<Vec2, 5>& b) {
        for (int i = 0; i < 5; ++i) {
            Vec2 edge = poly[(i + 1) % 5] - poly[i];
            Vec2 n(edge.y(), -edge.x());
            const double nn = n.norm();
            if (nn == 0.0) continue;
            n /= nn;
            double amin = INFINITY, amax = -INFINITY, bmin = INFINITY, bmax = -INFINITY;
            for (int k = 0; k < 5; ++k) {
                const double pa = n.dot(a[k]);
                const double pb = n.dot(b[k]);
                amin = std::min(amin, pa); amax = std::max(amax, pa);
                bmin = std::min(bmin, pb); bmax = std::max(bmax, pb);
            }
            best = std::max(best, std::max(bmin - amax, amin - bmax));
        }
    };
    consider(p1, p1, p2);
    consider(p2, p1, p2);
    if (best > eps) return OverlapKind::Disjoint;
    if (best >= -eps) return OverlapKind::SharesBoundaryOnly;
    return OverlapKind::InteriorsIntersect;
}

OverlapKind overlap(const PentagonShape& s1, const Congruence& c1, const PentagonShape& s2,
                    const Congruence& c2, const Tolerances& tol) {
    std::array<Vec2, 5> p1, p2;
    for (int i = 0; i < 5; ++i) {
        p1[i] = c1.apply(s1.vertices[i]);
        p2[i] = c2.apply(s2.vertices[i]);
    }
    const double eps = tol.len_tol_abs(std::max(s1.diameter(), s2.diameter()));
    return overlap_points(p1, p2, std::max(eps, 1e-12));
}

}  // namespace pentile

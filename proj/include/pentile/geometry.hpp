#pragma once

#include "pentile/types.hpp"

#include <array>
#include <optional>
#include <stdexcept>

namespace pentile {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotClosed : GeometryError {
    using GeometryError::GeometryError;
};
struct NotConvex : GeometryError {
    using GeometryError::GeometryError;
};

// Interior angles in degrees, fixed label order A..E.
struct AngleVector {
    Vector5d deg;

    double sum() const { return deg.sum(); }
    bool sums_to_540(double angle_tol) const { return std::abs(sum() - 540.0) <= angle_tol; }
    bool all_convex() const { return (deg.array() > 0.0).all() && (deg.array() < 180.0).all(); }
};

// Edge lengths, dimensionless. Positivity is the only invariant here;
// realizability is build_pentagon's business.
struct EdgeVector {
    Vector5d len;

    bool all_positive() const { return (len.array() > 0.0).all(); }
};

inline AngleVector make_angles(double a, double b, double c, double d, double e) {
    AngleVector v;
    v.deg << a, b, c, d, e;
    return v;
}
inline EdgeVector make_edges(double a, double b, double c, double d, double e) {
    EdgeVector v;
    v.len << a, b, c, d, e;
    return v;
}

// Headings (degrees) of the five directed edges when traversing A->B->...->A
// with edge a along +x. Requires only the angle data.
std::array<double, 5> edge_headings(const AngleVector& angles);

// Vector sum of the five directed edges; zero iff the traverse closes.
Vec2 closure_defect(const AngleVector& angles, const EdgeVector& edges);

// A realized convex pentagon: vertex A at the origin, edge a along +x,
// counterclockwise. Carries its source measurements.
struct PentagonShape {
    std::array<Vec2, 5> vertices;
    AngleVector angles;
    EdgeVector edges;

    Vec2 vertex(int v) const { return vertices[static_cast<size_t>(v)]; }
    double edge_length(int e) const { return edges.len(e); }
    double angle_deg(int v) const { return angles.deg(v); }
    double diameter() const;
    double area() const;
    Vec2 centroid() const;
    double min_angle_deg() const { return angles.deg.minCoeff(); }
};

// Realizes the pentagon or throws NotClosed / NotConvex.
PentagonShape build_pentagon(const AngleVector& angles, const EdgeVector& edges,
                             const Tolerances& tol = {});

// Direct or mirrored rigid motion: p -> R(theta) * (mirrored ? diag(1,-1) p : p) + t.
struct Congruence {
    double rotation_deg = 0.0;
    Vec2 translation = Vec2::Zero();
    bool mirrored = false;

    static Congruence identity() { return {}; }
    Mat2 linear() const;
    Vec2 apply(const Vec2& p) const { return linear() * p + translation; }
    Congruence inverse() const;
    Congruence then(const Congruence& second) const;  // second ∘ this
};

enum class OverlapKind { Disjoint, SharesBoundaryOnly, InteriorsIntersect };

// Separating-axis classification for two convex polygons given as transformed
// pentagon shapes. Contact within tol counts as boundary-only.
OverlapKind overlap(const PentagonShape& s1, const Congruence& c1, const PentagonShape& s2,
                    const Congruence& c2, const Tolerances& tol = {});

OverlapKind overlap_points(const std::array<Vec2, 5>& p1, const std::array<Vec2, 5>& p2,
                           double eps);

}  // namespace pentile

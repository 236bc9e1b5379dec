#include "pentile/solve_family.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace pentile {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

// Vertices of the closed polytope {x : A x <= b} in dimension d <= 4.
std::vector<Eigen::VectorXd> polytope_vertices(const Eigen::MatrixXd& A,
                                               const Eigen::VectorXd& b) {
    const int d = static_cast<int>(A.cols());
    const int m = static_cast<int>(A.rows());
    std::vector<Eigen::VectorXd> verts;
    if (d == 0) return verts;

    std::vector<int> idx(d);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == d) {
            Eigen::MatrixXd S(d, d);
            Eigen::VectorXd rhs(d);
            for (int i = 0; i < d; ++i) {
                S.row(i) = A.row(idx[i]);
                rhs(i) = b(idx[i]);
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
            if (!lu.isInvertible()) return;
            Eigen::VectorXd x = lu.solve(rhs);
            const double scale = b.cwiseAbs().maxCoeff() + 1.0;
            if (((A * x - b).array() <= 1e-9 * scale).all()) verts.push_back(x);
            return;
        }
        for (int i = start; i <= m - (d - depth); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);

    // dedupe
    std::vector<Eigen::VectorXd> out;
    for (const auto& v : verts) {
        bool dup = false;
        for (const auto& u : out) {
            if ((u - v).cwiseAbs().maxCoeff() < 1e-9 * (1.0 + v.cwiseAbs().maxCoeff())) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(v);
    }
    return out;
}

// Midpoint-stratified grid over the bounding box of the vertices plus the
// centroid and centroid-vertex midpoints, filtered to the strict interior;
// the centroid is always yielded first.
std::vector<Eigen::VectorXd> sample_polytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                             const std::vector<Eigen::VectorXd>& verts,
                                             int per_dim, int max_samples) {
    std::vector<Eigen::VectorXd> out;
    if (verts.empty()) return out;
    const int d = static_cast<int>(verts.front().size());
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (const auto& v : verts) centroid += v;
    centroid /= static_cast<double>(verts.size());
    const double scale = b.cwiseAbs().maxCoeff() + 1.0;
    auto strictly_inside = [&](const Eigen::VectorXd& x) {
        return ((A * x - b).array() < -1e-9 * scale).all();
    };
    auto push = [&](const Eigen::VectorXd& x) {
        if (static_cast<int>(out.size()) >= max_samples) return;
        if (!strictly_inside(x)) return;
        for (const auto& u : out)
            if ((u - x).cwiseAbs().maxCoeff() < 1e-9 * scale) return;
        out.push_back(x);
    };
    push(centroid);
    for (const auto& v : verts) push(0.5 * (centroid + v));

    Eigen::VectorXd lo = verts.front(), hi = verts.front();
    for (const auto& v : verts) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    std::vector<int> counter(d, 0);
    while (static_cast<int>(out.size()) < max_samples) {
        Eigen::VectorXd x(d);
        for (int i = 0; i < d; ++i)
            x(i) = lo(i) + (counter[i] + 0.5) / per_dim * (hi(i) - lo(i));
        push(x);
        int i = 0;
        while (i < d && ++counter[i] == per_dim) counter[i++] = 0;
        if (i == d) break;
    }
    return out;
}

struct EdgeClassMap {
    Eigen::MatrixXd expand;  // 5 x m, edge length = expand * rep lengths
    int reps = 0;
};

EdgeClassMap build_class_map(const std::vector<std::vector<int>>& classes) {
    std::array<int, 5> parent;
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (const auto& cls : classes)
        for (size_t i = 1; i < cls.size(); ++i) parent[find(cls[i])] = find(cls[0]);

    std::array<int, 5> rep_col;
    int m = 0;
    for (int i = 0; i < 5; ++i)
        if (find(i) == i) rep_col[i] = m++;
    EdgeClassMap out;
    out.reps = m;
    out.expand = Eigen::MatrixXd::Zero(5, m);
    for (int i = 0; i < 5; ++i) out.expand(i, rep_col[find(i)]) = 1.0;
    return out;
}

}  // namespace

ConstraintSet ConstraintSet::from_pattern(const CandidatePattern& p, bool use_forced_equalities) {
    ConstraintSet cs;
    cs.add_condition(p.v1);
    cs.add_condition(p.v2);
    if (use_forced_equalities) {
        for (const auto& [i, j] : p.forced_edge_equalities) cs.edge_classes.push_back({i, j});
    }
    return cs;
}

ConstraintSet ConstraintSet::from_type(const TypeDefinition& def) {
    return ConstraintSet{def.angle_relations, def.edge_classes, def.edge_relations};
}

AngleSystem build_angle_system(const std::vector<AngleRelation>& relations) {
    AngleSystem sys;
    const int ne = static_cast<int>(relations.size()) + 1;
    sys.A = RationalMatrix::Constant(ne, 5, Rational(0));
    sys.b = RationalVector::Constant(ne, Rational(0));
    for (int c = 0; c < 5; ++c) sys.A(0, c) = Rational(1);
    sys.b(0) = Rational(540);
    for (size_t i = 0; i < relations.size(); ++i) {
        for (int c = 0; c < 5; ++c) sys.A(static_cast<int>(i) + 1, c) = Rational(relations[i].coeff[c]);
        sys.b(static_cast<int>(i) + 1) = Rational(relations[i].rhs_deg);
    }
    sys.G = RationalMatrix::Constant(10, 5, Rational(0));
    sys.h = RationalVector::Constant(10, Rational(0));
    for (int v = 0; v < 5; ++v) {
        sys.G(2 * v, v) = Rational(-1);       // -x < 0
        sys.h(2 * v) = Rational(0);
        sys.G(2 * v + 1, v) = Rational(1);    // x < 180
        sys.h(2 * v + 1) = Rational(180);
    }
    return sys;
}

std::vector<EdgeVector> solve_edges(const AngleVector& angles,
                                    const std::vector<std::vector<int>>& edge_classes,
                                    const std::vector<EdgeRelation>& edge_relations,
                                    int samples_per_dim, int max_samples, int* edge_dim_out) {
    if (edge_dim_out) *edge_dim_out = 0;
    const auto cm = build_class_map(edge_classes);
    const auto headings = edge_headings(angles);

    // closure (2 rows) + homogeneous relations, in representative space
    Eigen::MatrixXd full(2 + edge_relations.size(), 5);
    for (int i = 0; i < 5; ++i) {
        full(0, i) = std::cos(headings[i] * kDegToRad);
        full(1, i) = std::sin(headings[i] * kDegToRad);
    }
    for (size_t r = 0; r < edge_relations.size(); ++r)
        for (int i = 0; i < 5; ++i) full(2 + r, i) = edge_relations[r].coeff[i];
    Eigen::MatrixXd M = full * cm.expand;  // rows x m

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    lu.setThreshold(1e-9);
    Eigen::MatrixXd kernel = lu.kernel();  // m x d
    if (lu.dimensionOfKernel() == 0) return {};
    const int d = static_cast<int>(kernel.cols());

    // Positive cone section: w . s = 1 with w = sum of kernel rows (total of
    // representative lengths); vectors with nonpositive total cannot be
    // positive, so a zero w means an empty cone.
    Eigen::VectorXd w = kernel.colwise().sum().transpose();
    if (w.norm() < 1e-12) return {};
    Eigen::VectorXd s0 = w / w.squaredNorm();

    // basis of the hyperplane w.u = 0
    Eigen::MatrixXd B;
    if (d > 1) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.transpose(), Eigen::ComputeFullV);
        B = svd.matrixV().rightCols(d - 1);
    } else {
        B = Eigen::MatrixXd::Zero(1, 0);
    }

    // rep lengths = kernel * (s0 + B u) must be positive
    Eigen::MatrixXd A = -(kernel * B);
    Eigen::VectorXd b = kernel * s0;  // A u <= b  <=>  kernel(s0+Bu) >= 0

    std::vector<Eigen::VectorXd> points;
    if (d == 1) {
        if ((b.array() > 1e-9).all()) points.push_back(Eigen::VectorXd(0));
    } else {
        auto verts = polytope_vertices(A, b);
        points = sample_polytope(A, b, verts, samples_per_dim, max_samples);
        if (edge_dim_out && !points.empty()) *edge_dim_out = d - 1;
    }

    std::vector<EdgeVector> out;
    for (const auto& u : points) {
        Eigen::VectorXd reps = kernel * (s0 + (d > 1 ? (B * u).eval() : Eigen::VectorXd::Zero(d)));
        if ((reps.array() <= 1e-9).any()) continue;
        Eigen::VectorXd lens = cm.expand * reps;
        EdgeVector ev;
        ev.len = lens / lens.maxCoeff();
        out.push_back(ev);
        if (static_cast<int>(out.size()) >= max_samples) break;
    }
    return out;
}

SolveResult solve_family(const ConstraintSet& cs, const SolveOptions& opts) {
    SolveResult res;
    const auto sys = build_angle_system(cs.angle_relations);
    auto feas = feasible_strict(sys.A, sys.b, sys.G, sys.h);
    if (!feas.feasible) {
        res.angles_feasible = false;
        res.infeasibility = feas.certificate;
        return res;
    }
    res.angles_feasible = true;

    const auto aff = solve_exact(sys.A, sys.b);
    const int k = static_cast<int>(aff.free_columns.size());
    res.angle_dim = k;

    std::vector<AngleVector> angle_samples;
    Eigen::VectorXd part(5);
    Eigen::MatrixXd null5(5, k);
    for (int i = 0; i < 5; ++i) {
        part(i) = aff.particular(i).to_double();
        for (int j = 0; j < k; ++j) null5(i, j) = aff.nullspace(i, j).to_double();
    }
    if (k == 0) {
        AngleVector a;
        a.deg = part;
        angle_samples.push_back(a);
    } else {
        // bounds in parameter space: G (part + N t) < h
        Eigen::MatrixXd Gd(10, 5);
        Eigen::VectorXd hd(10);
        for (int i = 0; i < 10; ++i) {
            hd(i) = sys.h(i).to_double();
            for (int j = 0; j < 5; ++j) Gd(i, j) = sys.G(i, j).to_double();
        }
        Eigen::MatrixXd At = Gd * null5;
        Eigen::VectorXd bt = hd - Gd * part;
        auto verts = polytope_vertices(At, bt);
        for (const auto& t : sample_polytope(At, bt, verts, opts.samples_per_dim,
                                             opts.max_samples)) {
            AngleVector a;
            a.deg = part + null5 * t;
            angle_samples.push_back(a);
        }
    }

    bool any_edges = false;
    auto realize = [&](const AngleVector& a, const EdgeVector& ev) {
        PentagonShape shape;
        try {
            shape = build_pentagon(a, ev, opts.tol);
        } catch (const NotClosed&) {
            throw SolveDiverged("sampled edge assignment fails closure unexpectedly");
        } catch (const NotConvex&) {
            return;  // boundary sample drifted out of convexity
        }
        res.samples.push_back({a, ev, shape});
    };
    for (const auto& a : angle_samples) {
        int edim = 0;
        auto evs = solve_edges(a, cs.edge_classes, cs.edge_relations, opts.samples_per_dim,
                               std::max(1, opts.max_samples / std::max<int>(1, angle_samples.size())),
                               &edim);
        if (!evs.empty()) any_edges = true;
        res.edge_dim = std::max(res.edge_dim, edim);
        for (const auto& ev : evs) {
            realize(a, ev);
            if (static_cast<int>(res.samples.size()) >= opts.max_samples) return res;
        }
    }

    // Families cut out by a closure-rank drop: with two edge classes the
    // closure matrix is square on representatives and a solution needs its
    // determinant to vanish, a codimension-1 locus in angle space that point
    // sampling misses. Hunt sign changes of the determinant along grid lines
    // and bisect onto the locus.
    if (res.samples.empty() && k >= 1 && cs.edge_relations.empty()) {
        const auto cm = build_class_map(cs.edge_classes);
        if (cm.reps == 2) {
            Eigen::MatrixXd Gd(10, 5);
            Eigen::VectorXd hd(10);
            for (int i = 0; i < 10; ++i) {
                hd(i) = sys.h(i).to_double();
                for (int j = 0; j < 5; ++j) Gd(i, j) = sys.G(i, j).to_double();
            }
            const Eigen::MatrixXd At = Gd * null5;
            const Eigen::VectorXd bt = hd - Gd * part;
            const double scale = bt.cwiseAbs().maxCoeff() + 1.0;
            auto inside = [&](const Eigen::VectorXd& t) {
                return ((At * t - bt).array() < -1e-9 * scale).all();
            };
            auto fdet = [&](const Eigen::VectorXd& t) {
                AngleVector a;
                a.deg = part + null5 * t;
                const auto h = edge_headings(a);
                Eigen::MatrixXd full(2, 5);
                for (int i = 0; i < 5; ++i) {
                    full(0, i) = std::cos(h[i] * kDegToRad);
                    full(1, i) = std::sin(h[i] * kDegToRad);
                }
                const Eigen::MatrixXd M = full * cm.expand;
                return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
            };

            const auto verts = polytope_vertices(At, bt);
            std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> segments;
            if (!verts.empty()) {
                Eigen::VectorXd centroid = Eigen::VectorXd::Zero(k);
                for (const auto& v : verts) centroid += v;
                centroid /= static_cast<double>(verts.size());
                for (const auto& v : verts) segments.push_back({centroid, v});
                for (size_t i = 0; i < verts.size(); ++i)
                    for (size_t j = i + 1; j < verts.size(); ++j)
                        segments.push_back({verts[i], verts[j]});
                // axis-parallel lines across the bounding box
                Eigen::VectorXd lo = verts.front(), hi = verts.front();
                for (const auto& v : verts) {
                    lo = lo.cwiseMin(v);
                    hi = hi.cwiseMax(v);
                }
                const int lines_per_dim = std::max(3, opts.samples_per_dim);
                std::vector<int> counter(static_cast<size_t>(std::max(0, k - 1)), 0);
                for (int axis = 0; axis < k; ++axis) {
                    std::fill(counter.begin(), counter.end(), 0);
                    while (true) {
                        Eigen::VectorXd base(k);
                        int ci = 0;
                        for (int dd = 0; dd < k; ++dd) {
                            if (dd == axis) continue;
                            base(dd) = lo(dd) + (counter[static_cast<size_t>(ci++)] + 0.5) /
                                                    lines_per_dim * (hi(dd) - lo(dd));
                        }
                        Eigen::VectorXd p = base, q = base;
                        p(axis) = lo(axis);
                        q(axis) = hi(axis);
                        segments.push_back({p, q});
                        if (k == 1) break;
                        int ii = 0;
                        while (ii < k - 1 && ++counter[static_cast<size_t>(ii)] == lines_per_dim)
                            counter[static_cast<size_t>(ii++)] = 0;
                        if (ii == k - 1) break;
                    }
                }
            }
            double fscale = 1e-300;
            std::vector<Eigen::VectorXd> roots;
            for (const auto& [p, q] : segments) {
                const int scan = 49;
                for (int i = 0; i + 1 < scan; ++i) {
                    Eigen::VectorXd u = p + (q - p) * (static_cast<double>(i) / (scan - 1));
                    Eigen::VectorXd v = p + (q - p) * (static_cast<double>(i + 1) / (scan - 1));
                    if (!inside(u) || !inside(v)) continue;
                    double fu = fdet(u), fv = fdet(v);
                    fscale = std::max({fscale, std::abs(fu), std::abs(fv)});
                    if (std::abs(fu) <= 1e-13 * fscale) { roots.push_back(u); continue; }
                    if (fu * fv >= 0.0) continue;
                    for (int iter = 0; iter < 100; ++iter) {
                        Eigen::VectorXd mid = 0.5 * (u + v);
                        const double fm = fdet(mid);
                        if (fm == 0.0) { u = mid; v = mid; break; }
                        if (fu * fm < 0.0) {
                            v = mid;
                        } else {
                            u = mid;
                            fu = fm;
                        }
                    }
                    roots.push_back(0.5 * (u + v));
                }
            }
            // dedupe and realize
            std::vector<Eigen::VectorXd> unique_roots;
            for (const auto& r : roots) {
                bool dup = false;
                for (const auto& u : unique_roots)
                    if ((u - r).cwiseAbs().maxCoeff() < 1e-7 * scale) { dup = true; break; }
                if (!dup && inside(r)) unique_roots.push_back(r);
            }
            for (const auto& r : unique_roots) {
                AngleVector a;
                a.deg = part + null5 * r;
                auto evs = solve_edges(a, cs.edge_classes, cs.edge_relations, opts.samples_per_dim,
                                       1, nullptr);
                for (const auto& ev : evs) {
                    realize(a, ev);
                    if (!res.samples.empty()) res.closure_codim = 1;
                    if (static_cast<int>(res.samples.size()) >= opts.max_samples) return res;
                }
            }
            if (!res.samples.empty()) {
                res.closure_codim = 1;
                any_edges = true;
            }
        }
    }

    res.closure_empty = !any_edges;
    return res;
}

}  // namespace pentile

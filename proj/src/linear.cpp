#include "pentile/linear.hpp"

#include <cassert>

namespace pentile {

AffineSolution solve_exact(const RationalMatrix& A, const RationalVector& b) {
    const int rows = static_cast<int>(A.rows());
    const int cols = static_cast<int>(A.cols());
    RationalMatrix M(rows, cols + 1);
    M.leftCols(cols) = A;
    M.col(cols) = b;

    std::vector<int> pivot_col_of_row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i) {
            if (!M(i, c).is_zero()) { pivot = i; break; }
        }
        if (pivot < 0) continue;
        M.row(pivot).swap(M.row(r));
        M.row(r) /= M(r, c);
        for (int i = 0; i < rows; ++i) {
            if (i != r && !M(i, c).is_zero()) M.row(i) -= M(i, c) * M.row(r);
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }

    AffineSolution out;
    for (int i = r; i < rows; ++i) {
        if (!M(i, cols).is_zero()) { out.consistent = false; return out; }
    }
    out.consistent = true;

    std::vector<bool> is_pivot(cols, false);
    for (int col : pivot_col_of_row) is_pivot[col] = true;
    for (int c = 0; c < cols; ++c) {
        if (!is_pivot[c]) out.free_columns.push_back(c);
    }

    out.particular = RationalVector::Constant(cols, Rational(0));
    for (int i = 0; i < r; ++i) out.particular(pivot_col_of_row[i]) = M(i, cols);

    const int k = static_cast<int>(out.free_columns.size());
    out.nullspace = RationalMatrix::Constant(cols, k, Rational(0));
    for (int j = 0; j < k; ++j) {
        const int fc = out.free_columns[j];
        out.nullspace(fc, j) = Rational(1);
        for (int i = 0; i < r; ++i) out.nullspace(pivot_col_of_row[i], j) = -M(i, fc);
    }
    return out;
}

namespace {

// One working inequality: coeffs . x < rhs, with provenance multipliers over
// the original equality and inequality rows.
struct Row {
    RationalVector coeffs;
    Rational rhs;
    std::vector<Rational> eq_mult;
    std::vector<Rational> ineq_mult;
};

Row combine(const Row& a, const Row& b, const Rational& fa, const Rational& fb) {
    Row out;
    out.coeffs = fa * a.coeffs + fb * b.coeffs;
    out.rhs = fa * a.rhs + fb * b.rhs;
    out.eq_mult.resize(a.eq_mult.size());
    out.ineq_mult.resize(a.ineq_mult.size());
    for (size_t i = 0; i < out.eq_mult.size(); ++i)
        out.eq_mult[i] = fa * a.eq_mult[i] + fb * b.eq_mult[i];
    for (size_t i = 0; i < out.ineq_mult.size(); ++i)
        out.ineq_mult[i] = fa * a.ineq_mult[i] + fb * b.ineq_mult[i];
    return out;
}

}  // namespace

FeasibilityResult feasible_strict(const RationalMatrix& A, const RationalVector& b,
                                  const RationalMatrix& G, const RationalVector& h) {
    const int n = static_cast<int>(G.cols() > 0 ? G.cols() : A.cols());
    const int ne = static_cast<int>(A.rows());
    const int ni = static_cast<int>(G.rows());

    // Equality rows carry provenance over the equalities only.
    struct EqRow {
        RationalVector coeffs;
        Rational rhs;
        std::vector<Rational> eq_mult;
    };
    std::vector<EqRow> eqs;
    for (int i = 0; i < ne; ++i) {
        EqRow e{A.row(i).transpose(), b(i), std::vector<Rational>(ne, Rational(0))};
        e.eq_mult[i] = Rational(1);
        eqs.push_back(std::move(e));
    }

    // Reduce equalities; substitute into the inequalities.
    std::vector<Row> rows;
    for (int i = 0; i < ni; ++i) {
        Row r{G.row(i).transpose(), h(i), std::vector<Rational>(ne, Rational(0)),
              std::vector<Rational>(ni, Rational(0))};
        r.ineq_mult[i] = Rational(1);
        rows.push_back(std::move(r));
    }

    std::vector<bool> eliminated(n, false);
    std::vector<EqRow> pivots;
    for (auto& e : eqs) {
        for (const auto& p : pivots) {
            int pc = -1;
            for (int c = 0; c < n; ++c) {
                if (!p.coeffs(c).is_zero()) { pc = c; break; }
            }
            if (pc >= 0 && !e.coeffs(pc).is_zero()) {
                Rational f = e.coeffs(pc) / p.coeffs(pc);
                e.coeffs -= f * p.coeffs;
                e.rhs -= f * p.rhs;
                for (int i = 0; i < ne; ++i) e.eq_mult[i] -= f * p.eq_mult[i];
            }
        }
        int pc = -1;
        for (int c = 0; c < n; ++c) {
            if (!e.coeffs(c).is_zero()) { pc = c; break; }
        }
        if (pc < 0) {
            if (!e.rhs.is_zero()) {
                // 0 == nonzero: inconsistent equalities. Scale so rhs < 0.
                FarkasCertificate cert;
                Rational s = e.rhs > Rational(0) ? Rational(-1) : Rational(1);
                cert.eq_mult.resize(ne);
                for (int i = 0; i < ne; ++i) cert.eq_mult[i] = s * e.eq_mult[i];
                cert.ineq_mult.assign(ni, Rational(0));
                return {false, cert};
            }
            continue;
        }
        eliminated[pc] = true;
        for (auto& r : rows) {
            if (!r.coeffs(pc).is_zero()) {
                Rational f = r.coeffs(pc) / e.coeffs(pc);
                r.coeffs -= f * e.coeffs;
                r.rhs -= f * e.rhs;
                for (int i = 0; i < ne; ++i) r.eq_mult[i] -= f * e.eq_mult[i];
            }
        }
        pivots.push_back(e);
    }

    // Fourier-Motzkin on the remaining variables.
    for (int v = 0; v < n; ++v) {
        if (eliminated[v]) continue;
        std::vector<Row> pos, neg, zero;
        for (auto& r : rows) {
            if (r.coeffs(v) > Rational(0)) pos.push_back(std::move(r));
            else if (r.coeffs(v) < Rational(0)) neg.push_back(std::move(r));
            else zero.push_back(std::move(r));
        }
        rows = std::move(zero);
        for (const auto& rp : pos) {
            for (const auto& rn : neg) {
                // (-rn[v]) * rp + (rp[v]) * rn eliminates v; both factors > 0.
                Row r = combine(rp, rn, -rn.coeffs(v), rp.coeffs(v));
                rows.push_back(std::move(r));
            }
        }
    }

    for (const auto& r : rows) {
        // All coefficients are zero now; strict row demands 0 < rhs.
        if (!(Rational(0) < r.rhs)) {
            FarkasCertificate cert;
            cert.eq_mult = r.eq_mult;
            cert.ineq_mult = r.ineq_mult;
            return {false, cert};
        }
    }
    return {true, std::nullopt};
}

bool check_farkas(const RationalMatrix& A, const RationalVector& b,
                  const RationalMatrix& G, const RationalVector& h,
                  const FarkasCertificate& cert) {
    const int n = static_cast<int>(G.cols() > 0 ? G.cols() : A.cols());
    const int ne = static_cast<int>(A.rows());
    const int ni = static_cast<int>(G.rows());
    if (static_cast<int>(cert.eq_mult.size()) != ne) return false;
    if (static_cast<int>(cert.ineq_mult.size()) != ni) return false;

    bool any_ineq = false;
    for (const auto& m : cert.ineq_mult) {
        if (m.is_negative()) return false;
        if (!m.is_zero()) any_ineq = true;
    }

    RationalVector combo = RationalVector::Constant(n, Rational(0));
    Rational rhs(0);
    for (int i = 0; i < ne; ++i) {
        combo += cert.eq_mult[i] * A.row(i).transpose();
        rhs += cert.eq_mult[i] * b(i);
    }
    for (int i = 0; i < ni; ++i) {
        combo += cert.ineq_mult[i] * G.row(i).transpose();
        rhs += cert.ineq_mult[i] * h(i);
    }
    for (int c = 0; c < n; ++c) {
        if (!combo(c).is_zero()) return false;
    }
    // With inequalities involved, 0 < rhs would have to hold; rhs <= 0 refutes.
    // Without them, the equalities alone must combine to 0 == rhs != 0.
    return any_ineq ? rhs <= Rational(0) : !rhs.is_zero();
}

}  // namespace pentile

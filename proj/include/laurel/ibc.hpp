#pragma once

// Ideal boundary conditions at the finite-dimensional level.
//
// The data is a complex of constant maps a_q : E^q -> E^{q+1} together with a
// candidate subspace D^q of each E^q.  The tuple is an ideal boundary
// condition exactly when a_q D^q is contained in D^{q+1} for every q; the
// top-degree candidate defaults to the full space, which makes the final
// containment vacuous.  Around any base tuple of subspaces, the containment
// locus is cut out of the product of Grassmannian charts by explicit
// polynomial equations of degree at most two; this module emits those systems
// with exact coefficients and evaluates them, and computes the cohomology of
// the restricted complex for tuples that pass.

#include <optional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "complex_family.hpp"
#include "linalg.hpp"

namespace laurel {

// ---------------------------------------------------------------------------
// Problem data
// ---------------------------------------------------------------------------

/// Spaces E^0..E^M (dims), constant maps a_q : E^q -> E^{q+1} composing to
/// zero, and candidate subspaces given as full-column-rank basis matrices.
/// `candidates` holds either one entry per space, or one entry per space
/// except the top, in which case the top candidate is implicitly full.
struct IBCProblem {
    std::vector<int> dims;
    std::vector<QMat> maps;
    std::vector<QMat> candidates;

    int length() const { return static_cast<int>(maps.size()); }
};

/// Candidate basis at degree q, materializing the implicit full top.
inline QMat candidate_at(const IBCProblem& p, int q) {
    if (q >= 0 && q < static_cast<int>(p.candidates.size()))
        return p.candidates[static_cast<std::size_t>(q)];
    if (q == static_cast<int>(p.candidates.size()) &&
        q == static_cast<int>(p.dims.size()) - 1)
        return QMat::identity(p.dims[static_cast<std::size_t>(q)]);
    throw shape_mismatch("no candidate at degree " + std::to_string(q));
}

/// Structural validation: shapes, a_{q+1} a_q = 0, and full column rank of
/// every candidate basis.
inline ValidationReport validate_ibc(const IBCProblem& p) {
    ValidationReport rep;
    int m = p.length();
    if (static_cast<int>(p.dims.size()) != m + 1)
        throw shape_mismatch("ideal boundary data needs one space per degree");
    for (int q = 0; q < m; ++q) {
        const QMat& a = p.maps[static_cast<std::size_t>(q)];
        if (a.rows != p.dims[static_cast<std::size_t>(q + 1)] ||
            a.cols != p.dims[static_cast<std::size_t>(q)])
            throw shape_mismatch("map at degree " + std::to_string(q) + " has wrong shape");
    }
    std::size_t nc = p.candidates.size();
    if (nc != p.dims.size() && nc + 1 != p.dims.size())
        throw shape_mismatch("candidate count must cover all degrees (top optional)");
    for (std::size_t q = 0; q < nc; ++q) {
        const QMat& d = p.candidates[q];
        if (d.rows != p.dims[q])
            throw shape_mismatch("candidate at degree " + std::to_string(q) +
                                 " lives in the wrong space");
        if (rank(d) != d.cols)
            rep.fail("candidate basis at degree " + std::to_string(q) +
                     " does not have full column rank");
    }
    for (int q = 0; q + 1 < m; ++q) {
        QMat comp = p.maps[static_cast<std::size_t>(q + 1)] * p.maps[static_cast<std::size_t>(q)];
        if (!comp.is_zero())
            rep.fail("maps do not compose to zero at degree " + std::to_string(q));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

/// Outcome of the containment test a_q D^q subset of D^{q+1}.  On failure,
/// `witness_source` is a basis column of the offending D^q and
/// `witness_image` its image, which lies outside the span of D^{q+1}.
struct IBCVerdict {
    bool pass = true;
    int failing_degree = -1;
    std::optional<QMat> witness_source;
    std::optional<QMat> witness_image;
};

inline IBCVerdict check_ibc(const IBCProblem& p) {
    {
        ValidationReport rep = validate_ibc(p);
        if (!rep.ok) {
            std::string msg = "check_ibc: invalid problem:";
            for (const auto& s : rep.issues) msg += " [" + s + "]";
            throw invariant_violation(msg);
        }
    }
    IBCVerdict v;
    for (int q = 0; q < p.length(); ++q) {
        QMat dq = candidate_at(p, q);
        QMat dnext = candidate_at(p, q + 1);
        const QMat& a = p.maps[static_cast<std::size_t>(q)];
        for (int j = 0; j < dq.cols; ++j) {
            QMat src = submatrix(dq, 0, j, dq.rows, 1);
            QMat img = a * src;
            if (img.is_zero()) continue;
            if (!solve(dnext, img).has_value()) {
                v.pass = false;
                v.failing_degree = q;
                v.witness_source = src;
                v.witness_image = img;
                return v;
            }
        }
    }
    return v;
}

/// Folded single-space form: is the subspace spanned by X invariant under a?
inline IBCVerdict check_invariant_subspace(const QMat& a, const QMat& X) {
    if (!a.is_square() || a.rows != X.rows)
        throw shape_mismatch("check_invariant_subspace shapes");
    IBCProblem p;
    p.dims = {a.rows, a.rows};
    p.maps = {a};
    p.candidates = {X, X};
    return check_ibc(p);
}

// ---------------------------------------------------------------------------
// Chart polynomial systems
// ---------------------------------------------------------------------------

/// A polynomial of degree at most two in a fixed variable set, with exact
/// coefficients: constant + linear + quadratic monomials (i <= j).
struct QuadPoly {
    Scalar c;
    std::map<int, Scalar> lin;
    std::map<std::pair<int, int>, Scalar> quad;

    void add_lin(int i, const Scalar& v) {
        if (v.is_zero()) return;
        Scalar& slot = lin[i];
        slot += v;
        if (slot.is_zero()) lin.erase(i);
    }
    void add_quad(int i, int j, const Scalar& v) {
        if (v.is_zero()) return;
        if (i > j) std::swap(i, j);
        auto key = std::make_pair(i, j);
        Scalar& slot = quad[key];
        slot += v;
        if (slot.is_zero()) quad.erase(key);
    }
    bool is_zero() const { return c.is_zero() && lin.empty() && quad.empty(); }

    Scalar eval(const std::vector<Scalar>& vals) const {
        Scalar acc = c;
        for (const auto& [i, v] : lin) acc += v * vals.at(static_cast<std::size_t>(i));
        for (const auto& [ij, v] : quad)
            acc += v * vals.at(static_cast<std::size_t>(ij.first)) *
                   vals.at(static_cast<std::size_t>(ij.second));
        return acc;
    }
};

/// A system of degree-<= 2 equations over named chart variables.  For a
/// single containment chart the variables are x_{k}_{j} (domain chart,
/// j = 1..d0, k = d0+1..N) followed by y_{mu}_{nu} (codomain chart,
/// nu = 1..d1, mu = d1+1..M), with 1-based display indices.  Assembled
/// multi-degree systems use z{q}_{k}_{j} for the chart of the degree-q
/// candidate.  `eq_source` records the degree whose containment produced each
/// equation.
struct ChartSystem {
    int n_vars = 0;
    std::vector<std::string> var_names;
    std::vector<QuadPoly> equations;
    std::vector<int> eq_source;
};

namespace detail {

/// Append the containment equations for a (in adapted coordinates) to `sys`.
/// xbase/ybase are the variable offsets of the domain and codomain chart
/// blocks; atil is the matrix of a in the adapted bases.
inline void emit_pair_equations(ChartSystem& sys, const QMat& atil, int d0, int d1,
                                int xbase, int ybase, int source) {
    int N = atil.cols, M = atil.rows;
    auto xvar = [&](int k, int j) { return xbase + j * (N - d0) + (k - d0); };
    auto yvar = [&](int mu, int nu) { return ybase + nu * (M - d1) + (mu - d1); };
    for (int j = 0; j < d0; ++j)
        for (int mu = d1; mu < M; ++mu) {
            QuadPoly eq;
            eq.c = atil.at(mu, j);
            for (int k = d0; k < N; ++k) eq.add_lin(xvar(k, j), atil.at(mu, k));
            for (int nu = 0; nu < d1; ++nu) {
                eq.add_lin(yvar(mu, nu), -atil.at(nu, j));
                for (int k = d0; k < N; ++k)
                    eq.add_quad(xvar(k, j), yvar(mu, nu), -atil.at(nu, k));
            }
            sys.equations.push_back(std::move(eq));
            sys.eq_source.push_back(source);
        }
}

inline void push_chart_names(ChartSystem& sys, const std::string& stem, int d, int n) {
    for (int j = 0; j < d; ++j)
        for (int k = d; k < n; ++k)
            sys.var_names.push_back(stem + "_" + std::to_string(k + 1) + "_" +
                                    std::to_string(j + 1));
    sys.n_vars = static_cast<int>(sys.var_names.size());
}

}  // namespace detail

/// Containment chart for a single map a : V -> W around the base pair
/// (X0, Y0) = (leading d0 columns of E, leading d1 columns of F), where E and
/// F are adapted bases (invertible; their leading columns span the base
/// subspaces).  Points of the chart are X = span{e_j + sum_k x_{k}_{j} e_k}
/// and Y = span{f_nu + sum_mu y_{mu}_{nu} f_mu}; the returned equations
/// vanish at (x, y) exactly when a X is contained in Y.
inline ChartSystem chart_equations(const QMat& a, const QMat& E, const QMat& F, int d0,
                                   int d1) {
    if (E.rows != a.cols || F.rows != a.rows)
        throw shape_mismatch("chart_equations: bases do not match the map");
    if (!E.is_square() || !F.is_square())
        throw invariant_violation("chart_equations: adapted bases must be square");
    if (d0 < 0 || d0 > E.cols || d1 < 0 || d1 > F.cols)
        throw shape_mismatch("chart_equations: chart dimensions out of range");
    QMat atil = inverse(F) * a * E;  // throws singular_input when not bases
    ChartSystem sys;
    detail::push_chart_names(sys, "x", d0, E.cols);
    int xvars = sys.n_vars;
    detail::push_chart_names(sys, "y", d1, F.cols);
    detail::emit_pair_equations(sys, atil, d0, d1, 0, xvars, 0);
    return sys;
}

/// Invariant-subspace chart for a : V -> V around X0 = leading d columns of
/// E: the containment chart with both slots on the same chart, obtained by
/// identifying y with x.
inline ChartSystem fold_chart_equations(const QMat& a, const QMat& E, int d) {
    ChartSystem pair = chart_equations(a, E, E, d, d);
    int xvars = d * (E.cols - d);
    ChartSystem sys;
    detail::push_chart_names(sys, "x", d, E.cols);
    for (std::size_t e = 0; e < pair.equations.size(); ++e) {
        const QuadPoly& src = pair.equations[e];
        QuadPoly eq;
        eq.c = src.c;
        auto fold = [&](int i) { return i < xvars ? i : i - xvars; };
        for (const auto& [i, v] : src.lin) eq.add_lin(fold(i), v);
        for (const auto& [ij, v] : src.quad) eq.add_quad(fold(ij.first), fold(ij.second), v);
        if (!eq.is_zero()) {
            sys.equations.push_back(std::move(eq));
            sys.eq_source.push_back(0);
        }
    }
    return sys;
}

/// Assembled chart system for a whole problem: one chart block z{q} per
/// degree (target dimension target_dims[q], base basis bases[q], both one per
/// space), and the containment equations of every consecutive pair.  Chart
/// blocks are shared between the two containments they participate in.  A
/// full-dimensional chart at the top produces no equations there, matching
/// the implicit-full convention.
inline ChartSystem chart_equations_all(const IBCProblem& p, const std::vector<QMat>& bases,
                                       const std::vector<int>& target_dims) {
    int m = p.length();
    if (static_cast<int>(p.dims.size()) != m + 1)
        throw shape_mismatch("chart_equations_all: one space per degree");
    if (bases.size() != p.dims.size() || target_dims.size() != p.dims.size())
        throw shape_mismatch("chart_equations_all: one basis and target dim per space");
    ChartSystem sys;
    std::vector<int> offsets;
    for (std::size_t q = 0; q < bases.size(); ++q) {
        int n = p.dims[q];
        if (bases[q].rows != n || !bases[q].is_square())
            throw invariant_violation("chart_equations_all: adapted basis at degree " +
                                      std::to_string(q) + " must be a square basis");
        if (target_dims[q] < 0 || target_dims[q] > n)
            throw shape_mismatch("chart_equations_all: target dimension out of range");
        offsets.push_back(sys.n_vars);
        detail::push_chart_names(sys, "z" + std::to_string(q), target_dims[q], n);
    }
    for (int q = 0; q < m; ++q) {
        QMat atil = inverse(bases[static_cast<std::size_t>(q + 1)]) *
                    p.maps[static_cast<std::size_t>(q)] * bases[static_cast<std::size_t>(q)];
        detail::emit_pair_equations(sys, atil, target_dims[static_cast<std::size_t>(q)],
                                    target_dims[static_cast<std::size_t>(q + 1)],
                                    offsets[static_cast<std::size_t>(q)],
                                    offsets[static_cast<std::size_t>(q + 1)], q);
    }
    return sys;
}

/// The subspace named by a chart point: basis_full * [I_d; coords], where
/// coords is the (n-d) x d matrix with entry (k-d, j) the coefficient of the
/// k-th adapted basis vector in the j-th spanning vector.
inline QMat chart_subspace(const QMat& basis_full, int d, const QMat& coords) {
    if (!basis_full.is_square()) throw invariant_violation("chart_subspace: basis not square");
    int n = basis_full.cols;
    if (d < 0 || d > n || coords.rows != n - d || coords.cols != d)
        throw shape_mismatch("chart_subspace: coordinate block has wrong shape");
    return basis_full * vstack(QMat::identity(d), coords);
}

/// Pack a chart-coordinate block (single chart, as in chart_subspace) into
/// the flat variable order used by the emitted systems: j-major, k within.
inline std::vector<Scalar> chart_values(const QMat& coords) {
    std::vector<Scalar> vals;
    for (int j = 0; j < coords.cols; ++j)
        for (int k = 0; k < coords.rows; ++k) vals.push_back(coords.at(k, j));
    return vals;
}

// ---------------------------------------------------------------------------
// Quotient cohomology
// ---------------------------------------------------------------------------

/// Cohomology dimensions of the restricted complex (D^q, a_q restricted to
/// D^q) for a tuple that passes check_ibc.  Exact rank bookkeeping:
/// dim H^q = d_q - rank r_q - rank r_{q-1} with r_q the matrix of the
/// restricted map in the candidate bases.
inline std::vector<int> quotient_cohomology(const IBCProblem& p) {
    IBCVerdict v = check_ibc(p);
    if (!v.pass)
        throw invariant_violation("quotient_cohomology: not an ideal boundary condition "
                                  "(containment fails at degree " +
                                  std::to_string(v.failing_degree) + ")");
    int m = p.length();
    std::vector<int> rk(static_cast<std::size_t>(m), 0);
    for (int q = 0; q < m; ++q) {
        QMat dq = candidate_at(p, q);
        QMat dnext = candidate_at(p, q + 1);
        std::optional<QMat> r = solve(dnext, p.maps[static_cast<std::size_t>(q)] * dq);
        if (!r.has_value())
            throw invariant_violation("quotient_cohomology: containment lost");  // unreachable
        rk[static_cast<std::size_t>(q)] = rank(*r);
    }
    std::vector<int> h;
    for (int q = 0; q <= m; ++q) {
        int d = candidate_at(p, q).cols;
        int out = q < m ? rk[static_cast<std::size_t>(q)] : 0;
        int in = q > 0 ? rk[static_cast<std::size_t>(q - 1)] : 0;
        h.push_back(d - out - in);
    }
    return h;
}

}  // namespace laurel

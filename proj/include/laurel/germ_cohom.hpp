#pragma once

// Germ cohomology at the center.  Principal parts (finite singular tails of
// meromorphic germs) form finite-dimensional coordinate spaces on which the
// maps of a ComplexFamily act by block-Toeplitz matrices; kernels modulo
// images of those matrices compute the local cohomology, with the Green pole
// order certifying the depth at which the computation is exact.

#include <vector>

#include "complex_family.hpp"

namespace laurel {

/// Coordinates of a principal part sum_{d=1}^{depth} u_d (s-center)^{-d} with
/// u_d in C^n: a stacked column of size n*depth, depth-1 block first.
struct PrincipalPart {
    Scalar center;
    int n = 0;
    int depth = 0;
    QMat v;  // (n*depth) x 1

    static PrincipalPart zero(const Scalar& center, int n, int depth) {
        PrincipalPart p;
        p.center = center;
        p.n = n;
        p.depth = depth;
        p.v = QMat(n * depth, 1);
        return p;
    }

    Scalar& coord(int d, int j) { return v.at((d - 1) * n + j, 0); }
    const Scalar& coord(int d, int j) const { return v.at((d - 1) * n + j, 0); }

    /// Smallest depth window containing all nonzero coefficients.
    int effective_depth() const {
        for (int d = depth; d >= 1; --d)
            for (int j = 0; j < n; ++j)
                if (!coord(d, j).is_zero()) return d;
        return 0;
    }

    PrincipalPart resized(int new_depth) const {
        if (new_depth < effective_depth())
            throw invariant_violation("principal part truncation would drop coefficients");
        PrincipalPart p = zero(center, n, new_depth);
        int keep = std::min(depth, new_depth);
        for (int d = 1; d <= keep; ++d)
            for (int j = 0; j < n; ++j) p.coord(d, j) = coord(d, j);
        return p;
    }

    /// The principal part as a vector of exact Laurent polynomials.
    std::vector<Series> to_series() const {
        std::vector<Series> out;
        for (int j = 0; j < n; ++j) {
            Series s = Series::zero_exact(center);
            for (int d = 1; d <= depth; ++d)
                s = series_add(s, Series::monomial(center, coord(d, j), -d));
            out.push_back(s);
        }
        return out;
    }

    static PrincipalPart from_series(const std::vector<Series>& vec, const Scalar& center,
                                     int depth) {
        PrincipalPart p = zero(center, static_cast<int>(vec.size()), depth);
        for (int j = 0; j < p.n; ++j) {
            const Series& s = vec[static_cast<std::size_t>(j)];
            Series sing = singular_part(s);
            if (!sing.c.empty() && sing.val < -depth)
                throw invariant_violation("principal part deeper than requested depth");
            for (int d = 1; d <= depth; ++d) p.coord(d, j) = sing.coeff(-d);
        }
        return p;
    }
};

/// The block-Toeplitz matrix of the induced map on principal-part
/// coordinates: (sPu)_{-m} = sum_{k>=0} P_k u_{-(m+k)} for output depths
/// m = 1..N_out from input depths 1..N_in; block (m, l) is the Taylor
/// coefficient P_{l-m} for l >= m and zero otherwise.
inline QMat germ_map_matrix(const SMat& P, int N_in, int N_out) {
    QMat M(P.rows * N_out, P.cols * N_in);
    for (int m = 1; m <= N_out; ++m)
        for (int l = std::max(1, m); l <= N_in; ++l) {
            QMat block = P.coeff_matrix(l - m);
            for (int i = 0; i < P.rows; ++i)
                for (int j = 0; j < P.cols; ++j)
                    M.at((m - 1) * P.rows + i, (l - 1) * P.cols + j) = block.at(i, j);
        }
    return M;
}

/// Apply the singular-part map: u at the input depth, output truncated to
/// N_out (equals singular_part of the series product when N_out >= depth(u)).
inline PrincipalPart apply_germ_map(const SMat& P, const PrincipalPart& u, int N_out) {
    if (P.cols != u.n) throw shape_mismatch("apply_germ_map");
    QMat M = germ_map_matrix(P, u.depth, N_out);
    PrincipalPart out = PrincipalPart::zero(u.center, P.rows, N_out);
    out.v = M * u.v;
    return out;
}

/// A computed cohomology basis at a fixed depth.  Rows of `reps` are the
/// canonical representatives (RREF of the kernel reduced modulo the image);
/// `image_rref` spans the coboundary subspace inside the depth window, and
/// `kernel_rows` the cocycles.  Coordinates are PrincipalPart stacking.
struct CohomBasis {
    int degree = 0;
    int depth_used = 0;
    int dim = 0;
    int n = 0;
    Scalar center;
    QMat reps;         // dim x (n*depth)
    QMat image_rref;   // r x (n*depth)
    QMat kernel_rows;  // k x (n*depth)

    PrincipalPart rep(int i) const {
        PrincipalPart p = PrincipalPart::zero(center, n, depth_used);
        for (int c = 0; c < reps.cols; ++c) p.v.at(c, 0) = reps.at(i, c);
        return p;
    }

    std::vector<PrincipalPart> rep_list() const {
        std::vector<PrincipalPart> out;
        for (int i = 0; i < dim; ++i) out.push_back(rep(i));
        return out;
    }
};

/// Kernel of the degree-q germ map at depth N, modulo the image of the
/// degree-(q-1) germ map.  The image is generated from inputs of depth
/// N_in_image (>= N) and intersected exactly with the depth-N window; with
/// the default N_in_image = N this is the plain equal-depth quotient, while
/// stabilized_cohomology passes the certified deeper input.
inline CohomBasis cohomology_at(const ComplexFamily& C, int q, int N,
                                std::optional<int> N_in_image = std::nullopt) {
    if (q < 0 || q > C.length()) throw shape_mismatch("cohomology degree out of range");
    if (N < 1) throw invariant_violation("cohomology depth must be >= 1");
    int n = C.dim(q);
    int Ni = N_in_image.value_or(N);
    if (Ni < N) throw invariant_violation("image input depth below quotient depth");

    CohomBasis b;
    b.degree = q;
    b.depth_used = N;
    b.n = n;
    b.center = C.center;

    // cocycles: kernel of sP_q at depth N (everything when q = m)
    if (q < C.length()) {
        QMat M = germ_map_matrix(C.map(q), N, N);
        b.kernel_rows = kernel_basis(M).transpose();
    } else {
        b.kernel_rows = QMat::identity(n * N);
    }

    // coboundaries: image of sP_{q-1} from depth Ni, cut to the depth-N window
    if (q > 0) {
        QMat Mim = germ_map_matrix(C.map(q - 1), Ni, Ni);
        QMat img = col_space_basis(Mim);  // columns span the image at depth Ni
        if (Ni > N) {
            // exact intersection with the subspace of vanishing deep coords
            QMat deep = submatrix(img, n * N, 0, n * (Ni - N), img.cols);
            QMat sel = kernel_basis(deep);
            img = submatrix(img * sel, 0, 0, n * N, sel.cols);
        }
        b.image_rref = row_space_rref(img.transpose());
    } else {
        b.image_rref = QMat(0, n * N);
    }

    // the image must consist of cocycles
    if (q < C.length() && b.image_rref.rows > 0) {
        QMat M = germ_map_matrix(C.map(q), N, N);
        if (!(M * b.image_rref.transpose()).is_zero())
            throw invariant_violation("coboundaries are not cocycles (complex property broken)");
    }

    QMat reduced = reduce_rows_mod_rref(b.kernel_rows, b.image_rref);
    b.reps = row_space_rref(reduced);
    b.dim = b.reps.rows;
    return b;
}

/// Largest finite local diagonal exponent of a map family (0 when the family
/// is zero or absent): the pole-depth margin needed for coboundary inputs.
inline int max_finite_smith_exponent(const SMat& P) {
    if (P.rows == 0 || P.cols == 0) return 0;
    SmithForm sf = local_smith_form(P);
    return sf.exponents.empty() ? 0 : sf.exponents.back();
}

/// Cohomology at the certified depth N = max(Green pole order, 1), with
/// coboundary inputs deepened by the largest finite diagonal exponent of
/// P_{q-1} so that every deep coboundary landing in the window is caught.
/// Dimensions are recomputed at depth N+1 and must agree (stabilization
/// witness); disagreement is a hard inconsistency.
inline CohomBasis stabilized_cohomology(const ComplexFamily& C, int q) {
    int L = green_pole_order(C, q);
    int N = std::max(L, 1);
    int e = (q > 0) ? max_finite_smith_exponent(C.map(q - 1)) : 0;
    CohomBasis b = cohomology_at(C, q, N, N + e);
    CohomBasis b2 = cohomology_at(C, q, N + 1, N + 1 + e);
    if (b.dim != b2.dim)
        throw invariant_violation("stabilization failure: dims " + std::to_string(b.dim) +
                                  " at depth " + std::to_string(N) + " vs " +
                                  std::to_string(b2.dim) + " at depth " + std::to_string(N + 1));
    return b;
}

/// Coordinates of a cocycle's class in a computed basis: the vector c with
/// [u] = sum_i c_i [rep_i], or nullopt when u is not a cocycle of the
/// basis's window or its class falls outside the span (never happens for a
/// stabilized basis).
inline std::optional<QMat> class_coordinates(const CohomBasis& b, const PrincipalPart& u) {
    PrincipalPart uu = u;
    if (u.depth != b.depth_used) {
        if (u.effective_depth() > b.depth_used) return std::nullopt;
        uu = u.resized(b.depth_used);
    }
    QMat row = uu.v.transpose();
    QMat red = reduce_rows_mod_rref(row, b.image_rref);
    // express red in the rep row space: solve reps^T c = red^T
    if (b.dim == 0) return red.is_zero() ? std::optional<QMat>(QMat(0, 1)) : std::nullopt;
    auto c = solve(b.reps.transpose(), red.transpose());
    return c;
}

struct NormalizedRep {
    PrincipalPart rep;                    // pole order <= Green order
    std::optional<PrincipalPart> witness; // w with sP_{q-1} w = u - rep (q > 0)
};

/// The Green-family representative formula: for a cocycle u at degree q,
///   u == s( G_q(s) P_q*(s - 2i Im c) P_q(s) u(s) )  modulo rg sP_{q-1},
/// where G_q is the local inverse of the Laplacian family.  The result has
/// pole order at most the Green pole order, and the coboundary witness for
/// the difference is returned (exactly zero difference when q = 0).
inline NormalizedRep representative_normalize(const ComplexFamily& C, int q,
                                              const PrincipalPart& u) {
    if (q < 0 || q > C.length()) throw shape_mismatch("degree out of range");
    if (C.dim(q) != u.n) throw shape_mismatch("principal part dimension mismatch");
    // closedness
    if (q < C.length()) {
        PrincipalPart pu = apply_germ_map(C.map(q), u, u.depth);
        if (!pu.v.is_zero()) throw invariant_violation("representative_normalize: u not closed");
    }
    SMat box = laplacian_family(C, q);
    SmithForm sf = local_smith_form(box);
    if (sf.rank < box.rows)
        throw singular_input("representative_normalize: Laplacian family singular");
    int L = sf.exponents.empty() ? 0 : sf.exponents.back();

    // y = P_q*(shift) P_q u as Laurent series (u has negative exponents only)
    std::vector<Series> us = u.to_series();
    std::vector<Series> y(static_cast<std::size_t>(C.dim(q)), Series::zero_exact(C.center));
    if (q < C.length()) {
        SMat comp = map_mul(shifted_adjoint(C, q), C.map(q));
        for (int i = 0; i < C.dim(q); ++i) {
            Series acc = Series::zero_exact(C.center);
            for (int j = 0; j < C.dim(q); ++j)
                acc = series_add(acc, series_mul(comp.at(i, j), us[static_cast<std::size_t>(j)]));
            y[static_cast<std::size_t>(i)] = acc;
        }
    }
    // G_q y = R diag(t^{-e} unit^{-1}) L y; only the singular part is needed.
    std::vector<Series> z(static_cast<std::size_t>(box.rows), Series::zero_exact(C.center));
    for (int i = 0; i < box.rows; ++i) {
        Series acc = Series::zero_exact(C.center);
        for (int j = 0; j < box.cols; ++j)
            acc = series_add(acc, series_mul(sf.L.at(i, j), y[static_cast<std::size_t>(j)]));
        z[static_cast<std::size_t>(i)] = acc;
    }
    for (int k = 0; k < box.rows; ++k) {
        Series& zk = z[static_cast<std::size_t>(k)];
        int e = sf.exponents[static_cast<std::size_t>(k)];
        if (zk.is_zero_known()) {
            zk = zk.exact ? Series::zero_exact(C.center)
                          : Series::zero_trunc(C.center, zk.ord - e);
            continue;
        }
        // need z'_k = unit^{-1} t^{-e} z_k down to exponent -1 and the
        // later R-multiplication (holomorphic) preserves lowest exponents,
        // so invert the unit to a sufficient order
        int need = std::max(0, e - 1 - zk.val);
        Series unit_inv = series_invert(sf.units[static_cast<std::size_t>(k)], need);
        zk = series_mul(unit_inv, shift_exponents(zk, -e));
    }
    std::vector<Series> g(static_cast<std::size_t>(box.rows), Series::zero_exact(C.center));
    for (int i = 0; i < box.rows; ++i) {
        Series acc = Series::zero_exact(C.center);
        for (int j = 0; j < box.cols; ++j)
            acc = series_add(acc, series_mul(sf.R.at(i, j), z[static_cast<std::size_t>(j)]));
        g[static_cast<std::size_t>(i)] = singular_part(acc);
    }
    int depth_out = 1;
    for (const auto& s : g)
        if (!s.c.empty()) depth_out = std::max(depth_out, -s.val);
    if (depth_out > std::max(L, 1))
        throw invariant_violation("normalized representative deeper than the Green order");
    NormalizedRep out;
    out.rep = PrincipalPart::from_series(g, C.center, std::max(L, 1));

    // witness: w with sP_{q-1} w = u - rep
    PrincipalPart diff = u.resized(std::max(u.depth, out.rep.depth));
    diff.v = diff.v - out.rep.resized(diff.depth).v;
    if (q == 0) {
        if (!diff.v.is_zero())
            throw invariant_violation("degree-0 normalization should reproduce u exactly");
        return out;
    }
    int e = max_finite_smith_exponent(C.map(q - 1));
    int Nw = diff.depth + e;
    QMat M = germ_map_matrix(C.map(q - 1), Nw, Nw);
    QMat rhs = diff.resized(Nw).v;
    auto w = solve(M, rhs);
    if (!w) throw invariant_violation("normalization difference is not a coboundary");
    PrincipalPart wit = PrincipalPart::zero(C.center, C.dim(q - 1), Nw);
    wit.v = *w;
    out.witness = wit;
    return out;
}

/// A degree-1 chain map T (T_q : V_q -> V_{q+1} with
/// P_{q+1} T_q + T_{q+1} P_q = 0) induces maps on germ cohomology.  Returns
/// the matrix of [u] -> [s(T_q u)] from basis `from` (degree q) to basis
/// `to` (degree q+1), verifying that cocycles map to cocycles and
/// coboundaries to coboundaries.
struct InducedMap {
    QMat matrix;  // to.dim x from.dim
    bool closed_verified = false;
    bool exact_verified = false;
};

namespace detail {
/// Class coordinates of a cocycle in a basis, normalizing first through the
/// Green representative formula when the raw window is too deep.
inline QMat coords_with_normalization(const ComplexFamily& C, int q, const CohomBasis& b,
                                      const PrincipalPart& u, const char* what) {
    PrincipalPart uu = u;
    if (u.effective_depth() > b.depth_used)
        uu = representative_normalize(C, q, u).rep;
    auto coords = class_coordinates(b, uu);
    if (!coords) throw invariant_violation(std::string(what) + ": class outside the basis span");
    return *coords;
}
}  // namespace detail

inline InducedMap induced_degree1_map(const ComplexFamily& C, const std::vector<SMat>& T, int q,
                                      const CohomBasis& from, const CohomBasis& to) {
    if (q < 0 || q >= C.length()) throw shape_mismatch("induced map degree out of range");
    if (static_cast<int>(T.size()) != C.length())
        throw shape_mismatch("degree-1 chain map needs one member per complex map");
    // anticommutation check at every degree where a summand exists
    for (int r = 0; r < C.length(); ++r) {
        bool have = false;
        SMat sum(0, 0, C.center);
        if (r + 1 < C.length()) {
            sum = map_mul(C.map(r + 1), T[static_cast<std::size_t>(r)]);
            have = true;
        }
        if (r + 1 < static_cast<int>(T.size())) {
            SMat second = map_mul(T[static_cast<std::size_t>(r + 1)], C.map(r));
            sum = have ? map_add(sum, second) : second;
            have = true;
        }
        if (have && !sum.is_zero_known())
            throw invariant_violation("degree-1 chain map: anticommutation fails at degree " +
                                      std::to_string(r));
    }
    InducedMap out;
    out.matrix = QMat(to.dim, from.dim);
    const SMat& Tq = T[static_cast<std::size_t>(q)];
    for (int i = 0; i < from.dim; ++i) {
        PrincipalPart u = from.rep(i);
        PrincipalPart tu = apply_germ_map(Tq, u, u.depth);
        // cocycle check in the target window
        if (q + 1 < C.length()) {
            PrincipalPart ptu = apply_germ_map(C.map(q + 1), tu, tu.depth);
            if (!ptu.v.is_zero())
                throw invariant_violation("induced map image is not a cocycle");
        }
        QMat coords = detail::coords_with_normalization(C, q + 1, to, tu, "induced map");
        for (int r = 0; r < to.dim; ++r) out.matrix.at(r, i) = coords.at(r, 0);
    }
    out.closed_verified = true;
    // coboundaries map to coboundaries: check on the image generators
    for (int i = 0; i < from.image_rref.rows; ++i) {
        PrincipalPart u = PrincipalPart::zero(C.center, from.n, from.depth_used);
        for (int c = 0; c < from.image_rref.cols; ++c) u.v.at(c, 0) = from.image_rref.at(i, c);
        PrincipalPart tu = apply_germ_map(Tq, u, u.depth);
        QMat coords = detail::coords_with_normalization(C, q + 1, to, tu, "induced map");
        if (!coords.is_zero())
            throw invariant_violation("induced map does not kill coboundaries");
    }
    out.exact_verified = true;
    return out;
}

/// Verify the squared-map witness identity T_{q+1} T_q = -(P_{q+1} S_q +
/// S_{q+1} P_q) for all applicable degrees, then confirm the induced maps
/// compose to zero between three consecutive stabilized bases.
inline bool verify_degree1_square(const ComplexFamily& C, const std::vector<SMat>& T,
                                  const std::vector<SMat>& S, int q, const CohomBasis& at_q,
                                  const CohomBasis& at_q1, const CohomBasis& at_q2) {
    for (int r = 0; r + 1 < static_cast<int>(T.size()); ++r) {
        SMat tt = map_mul(T[static_cast<std::size_t>(r + 1)], T[static_cast<std::size_t>(r)]);
        bool have = false;
        SMat sum(0, 0, C.center);
        if (r + 1 < C.length()) {
            sum = map_mul(C.map(r + 1), S[static_cast<std::size_t>(r)]);
            have = true;
        }
        if (r + 1 < static_cast<int>(S.size()) && r < C.length()) {
            SMat second = map_mul(S[static_cast<std::size_t>(r + 1)], C.map(r));
            sum = have ? map_add(sum, second) : second;
            have = true;
        }
        SMat total = have ? map_add(tt, sum) : tt;
        if (!total.is_zero_known())
            throw invariant_violation("degree-1 square witness identity fails at degree " +
                                      std::to_string(r));
    }
    InducedMap f = induced_degree1_map(C, T, q, at_q, at_q1);
    InducedMap g = induced_degree1_map(C, T, q + 1, at_q1, at_q2);
    return (g.matrix * f.matrix).is_zero();
}

}  // namespace laurel

#pragma once

// The residue pairing between germ cohomology of a complex at its center and
// germ cohomology of the adjoint complex at the conjugated center, descended
// to cohomology bases, with exact nondegeneracy certification.

#include <random>

#include "germ_cohom.hpp"

namespace laurel {

/// Exact residue of the sesquilinear inner product <a(s), b(conj s)>_G of two
/// Laurent vectors, a at center c and b at conj(c).  Writing a = sum a_k t^k
/// and b = sum b_m u^m (t = s-c, u = conj s - conj c), the product is
/// sum <a_k, b_m>_G t^{k+m}, second slot conjugate-linear, and the residue
/// collects k + m = -1.  Every potentially contributing coefficient must be
/// either known or paired against a known zero; otherwise
/// insufficient_truncation is raised.
inline Scalar residue_inner(const std::vector<Series>& a, const std::vector<Series>& b,
                            const QMat& G) {
    if (static_cast<int>(a.size()) != G.cols || static_cast<int>(b.size()) != G.rows)
        throw shape_mismatch("residue_inner dimensions");
    for (const auto& x : a)
        for (const auto& y : b)
            if (!(x.center.conj() == y.center))
                throw center_mismatch("residue_inner: second factor not at the conjugated center");
    Scalar total = Scalar::zero();
    for (int i = 0; i < G.rows; ++i)
        for (int j = 0; j < G.cols; ++j) {
            if (G.at(i, j).is_zero()) continue;
            // <x_k, y_m> G_{ij} at k + m = -1; <x, y>_G = y^H G x pairs
            // component j of the first slot with component i of the second.
            const Series& x = a[static_cast<std::size_t>(j)];
            const Series& y = b[static_cast<std::size_t>(i)];
            // y support window against x (exact coefficients beyond ord are zero)
            for (int m = y.val; m <= y.ord; ++m) {
                int k = -1 - m;
                if (!x.exact && k > x.ord) {
                    if (!y.coeff(m).is_zero())
                        throw insufficient_truncation(
                            "residue_inner: first factor truncated before a contributing term");
                    continue;
                }
                total += y.coeff(m).conj() * G.at(i, j) * x.coeff(k);
            }
            if (!y.exact) {
                // unknown y tail m > y.ord pairs with k = -1-m <= -2-y.ord;
                // those x coefficients must be known zeros.
                int k_hi = -2 - y.ord;
                for (int k = x.val; k <= std::min(x.known_upto(), k_hi); ++k)
                    if (!x.coeff(k).is_zero())
                        throw insufficient_truncation(
                            "residue_inner: second factor truncated before a contributing term");
                if (!x.exact && x.ord + 1 <= k_hi)
                    throw insufficient_truncation(
                        "residue_inner: both factors truncated across the residue line");
            }
        }
    return total;
}

/// Residue pairing of principal parts through a map family:
///   <u, v>_{P} = i * (coefficient of (s-c)^{-1} in <P(s) u(s), v(conj s)>_G)
/// with u at the center of P, v at the conjugated center, and G the inner
/// product on the codomain of P.
inline Scalar germ_pairing(const SMat& P, const QMat& g_cod, const PrincipalPart& u,
                           const PrincipalPart& v) {
    if (P.cols != u.n || P.rows != v.n) throw shape_mismatch("germ_pairing dimensions");
    if (u.center != P.center) throw center_mismatch("germ_pairing: u not at the map's center");
    if (v.center != P.center.conj())
        throw center_mismatch("germ_pairing: v not at the conjugated center");
    std::vector<Series> us = u.to_series();
    std::vector<Series> w(static_cast<std::size_t>(P.rows), Series::zero_exact(P.center));
    for (int i = 0; i < P.rows; ++i) {
        Series acc = Series::zero_exact(P.center);
        for (int j = 0; j < P.cols; ++j)
            acc = series_add(acc, series_mul(P.at(i, j), us[static_cast<std::size_t>(j)]));
        w[static_cast<std::size_t>(i)] = acc;
    }
    return Scalar::i() * residue_inner(w, v.to_series(), g_cod);
}

/// The cohomology basis dual to degree q of C under the residue pairing: the
/// classes of the adjoint complex at the conjugated center in adjoint degree
/// q+1, i.e. degree m-q-1 of the reversed adjoint complex.
inline CohomBasis adjoint_partner_basis(const ComplexFamily& C, int q) {
    ComplexFamily D = adjoint_complex(C);
    return stabilized_cohomology(D, C.length() - q - 1);
}

struct PairingMatrix {
    int degree = 0;
    QMat entries;  // basis_u.dim x basis_v.dim
    CohomBasis basis_u;
    CohomBasis basis_v;
};

/// Matrix of the residue pairing between stabilized cohomology bases of C at
/// degree q and of the adjoint complex in the dual degree.  In checked mode
/// every entry is recomputed after perturbing both representatives by
/// deterministic pseudo-random exact coboundaries and must be unchanged —
/// the descent-to-cohomology property as a built-in assertion.
inline PairingMatrix cohomology_pairing_matrix(const ComplexFamily& C, int q,
                                               bool checked = true) {
    if (q < 0 || q >= C.length()) throw shape_mismatch("pairing degree out of range");
    PairingMatrix pm;
    pm.degree = q;
    pm.basis_u = stabilized_cohomology(C, q);
    pm.basis_v = adjoint_partner_basis(C, q);
    ComplexFamily D = adjoint_complex(C);
    int r = C.length() - q - 1;  // degree of the partner basis inside D
    pm.entries = QMat(pm.basis_u.dim, pm.basis_v.dim);
    const QMat& g = C.gram(q + 1);

    std::mt19937 rng(0xA11CEu + static_cast<unsigned>(q));
    auto small_int = [&rng]() {
        return Scalar(Rat(static_cast<long>(rng() % 5) - 2));
    };
    QMat Mu(0, 0), Mv(0, 0);
    if (checked && q > 0) Mu = germ_map_matrix(C.map(q - 1), pm.basis_u.depth_used,
                                               pm.basis_u.depth_used);
    if (checked && r > 0) Mv = germ_map_matrix(D.map(r - 1), pm.basis_v.depth_used,
                                               pm.basis_v.depth_used);

    for (int i = 0; i < pm.basis_u.dim; ++i) {
        PrincipalPart u = pm.basis_u.rep(i);
        for (int j = 0; j < pm.basis_v.dim; ++j) {
            PrincipalPart v = pm.basis_v.rep(j);
            Scalar val = germ_pairing(C.map(q), g, u, v);
            if (checked) {
                PrincipalPart up = u, vp = v;
                if (q > 0) {
                    QMat phi(Mu.cols, 1);
                    for (int t = 0; t < phi.rows; ++t) phi.at(t, 0) = small_int();
                    up.v = u.v + Mu * phi;
                }
                if (r > 0) {
                    QMat psi(Mv.cols, 1);
                    for (int t = 0; t < psi.rows; ++t) psi.at(t, 0) = small_int();
                    vp.v = v.v + Mv * psi;
                }
                Scalar val2 = germ_pairing(C.map(q), g, up, vp);
                if (!(val2 - val).is_zero())
                    throw invariant_violation(
                        "pairing not class-invariant: descent to cohomology failed");
            }
            pm.entries.at(i, j) = val;
        }
    }
    return pm;
}

/// The pairing with the roles of the complexes exchanged,
/// <v, u>_{adjoint, original}: same residue formula driven by the adjoint
/// complex's map, used to test antisymmetry.
inline Scalar swapped_pairing(const ComplexFamily& C, int q, const PrincipalPart& u,
                              const PrincipalPart& v) {
    ComplexFamily D = adjoint_complex(C);
    int r = C.length() - q - 1;
    return germ_pairing(D.map(r), D.gram(r + 1), v, u);
}

struct NondegVerdict {
    bool pass = false;
    Scalar det_value;             // meaningful when square
    std::optional<QMat> null_u;   // left null vector: class pairing to zero
    std::optional<QMat> null_v;   // right null vector on the adjoint side
};

/// Nondegeneracy certificate: pass iff the matrix is square with nonzero
/// exact determinant.  On failure an explicit null class is produced (left
/// side when it exists, right side otherwise).
inline NondegVerdict certify_nondegenerate(const PairingMatrix& pm) {
    NondegVerdict v;
    const QMat& M = pm.entries;
    if (M.rows == M.cols) {
        v.det_value = det(M);
        if (!v.det_value.is_zero()) {
            v.pass = true;
            return v;
        }
    }
    QMat leftk = kernel_basis(M.transpose());
    if (leftk.cols > 0) {
        v.null_u = submatrix(leftk, 0, 0, leftk.rows, 1);
        return v;
    }
    QMat rightk = kernel_basis(M);
    if (rightk.cols > 0) v.null_v = submatrix(rightk, 0, 0, rightk.rows, 1);
    return v;
}

}  // namespace laurel

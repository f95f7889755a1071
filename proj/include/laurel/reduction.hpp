#pragma once

// The reduction pipeline: orthogonal Hodge-Kodaira decomposition at the
// center, Schur-complement reduced complex on the harmonic spaces with
// homotopy data, division of a center-vanishing complex by (s - c), and the
// recursive nondegeneracy certificate that mirrors the inductive duality
// proof with every step verified exactly.

#include "pairing.hpp"

namespace laurel {

/// Orthogonal splitting F_q = N_q + R*_q + R_q determined by the constant
/// terms A_q = P_q(center): N_q = ker A_q ∩ ker A*_{q-1}, R*_q = rg A*_q,
/// R_q = rg A_{q-1}, orthogonal under the Gram inner products.
struct HodgeData {
    Scalar center;
    std::vector<int> dims;
    std::vector<QMat> basis_N, basis_Rstar, basis_R;  // columns span each block
    std::vector<QMat> T, Tinv;                        // [N | R* | R] coordinates
    std::vector<QMat> proj_N, proj_Rstar, proj_R;

    int length() const { return static_cast<int>(dims.size()) - 1; }
    int dim_N(int q) const { return basis_N[static_cast<std::size_t>(q)].cols; }
    int dim_Rstar(int q) const { return basis_Rstar[static_cast<std::size_t>(q)].cols; }
    int dim_R(int q) const { return basis_R[static_cast<std::size_t>(q)].cols; }
};

inline HodgeData hodge_decompose(const ComplexFamily& C) {
    int m = C.length();
    for (int q = 0; q <= m; ++q)
        if (!is_positive_definite(C.gram(q)))
            throw singular_input("hodge_decompose: Gram matrix is not positive definite");

    HodgeData H;
    H.center = C.center;
    H.dims = C.dims;
    std::vector<QMat> A(static_cast<std::size_t>(m));        // constant terms
    std::vector<QMat> Astar(static_cast<std::size_t>(m));    // their Gram adjoints
    for (int q = 0; q < m; ++q) {
        A[static_cast<std::size_t>(q)] = C.map(q).value_at_center();
        Astar[static_cast<std::size_t>(q)] =
            gram_adjoint(A[static_cast<std::size_t>(q)], C.gram(q), C.gram(q + 1));
    }

    for (int q = 0; q <= m; ++q) {
        int n = C.dim(q);
        QMat killers(0, n);  // rows annihilating N_q
        if (q < m) killers = vstack(killers, A[static_cast<std::size_t>(q)]);
        if (q > 0) killers = vstack(killers, Astar[static_cast<std::size_t>(q - 1)]);
        QMat bN = killers.rows > 0 ? kernel_basis(killers) : QMat::identity(n);
        QMat bRs = q < m ? col_space_basis(Astar[static_cast<std::size_t>(q)]) : QMat(n, 0);
        QMat bR = q > 0 ? col_space_basis(A[static_cast<std::size_t>(q - 1)]) : QMat(n, 0);
        if (bN.cols + bRs.cols + bR.cols != n)
            throw invariant_violation("hodge_decompose: blocks do not fill the space");
        QMat Tq = hstack(hstack(bN, bRs), bR);
        QMat Tq_inv = inverse(Tq);

        // projections through the block coordinates
        QMat pN = bN.cols > 0 ? bN * submatrix(Tq_inv, 0, 0, bN.cols, n) : QMat(n, n);
        QMat pRs =
            bRs.cols > 0 ? bRs * submatrix(Tq_inv, bN.cols, 0, bRs.cols, n) : QMat(n, n);
        QMat pR = bR.cols > 0 ? bR * submatrix(Tq_inv, bN.cols + bRs.cols, 0, bR.cols, n)
                              : QMat(n, n);

        // exact invariants: resolution of identity, idempotence, mutual
        // annihilation, Gram orthogonality of the ranges
        if (!(pN + pRs + pR == QMat::identity(n)))
            throw invariant_violation("hodge_decompose: projections do not sum to identity");
        const QMat* ps[3] = {&pN, &pRs, &pR};
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                QMat prod = (*ps[x]) * (*ps[y]);
                if (x == y ? !(prod == *ps[x]) : !prod.is_zero())
                    throw invariant_violation("hodge_decompose: projection algebra broken");
            }
        const QMat* bs[3] = {&bN, &bRs, &bR};
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                if (x == y) continue;
                QMat cross = bs[x]->conj_transpose() * C.gram(q) * (*bs[y]);
                if (!cross.is_zero())
                    throw invariant_violation("hodge_decompose: blocks are not orthogonal");
            }

        H.basis_N.push_back(bN);
        H.basis_Rstar.push_back(bRs);
        H.basis_R.push_back(bR);
        H.T.push_back(Tq);
        H.Tinv.push_back(Tq_inv);
        H.proj_N.push_back(pN);
        H.proj_Rstar.push_back(pRs);
        H.proj_R.push_back(pR);
    }
    return H;
}

/// Schur reduction output: the homotopy Q_q : F_q -> F_{q-1}, the chain maps
/// Phi_q : F_q -> N_q and Psi_q : N_q -> F_q, and the reduced complex Ptilde
/// on the N-spaces, vanishing at the center.
struct ReductionData {
    HodgeData hodge;
    std::vector<SMat> Q;    // degree q entry maps F_q -> F_{q-1} (row count 0 at q=0)
    std::vector<SMat> Phi;  // F_q -> N_q
    std::vector<SMat> Psi;  // N_q -> F_q
    ComplexFamily Ptilde;
};

namespace detail {
inline SMat invert_block(const SMat& P32, std::optional<int> order) {
    if (P32.rows != P32.cols)
        throw invariant_violation("schur_reduce: P32 block is not square");
    if (det(P32.value_at_center()).is_zero())
        throw invariant_violation("schur_reduce: P32 singular at the center");
    try {
        return local_inverse(P32);
    } catch (const insufficient_truncation&) {
        if (!order) throw;
        return local_inverse(P32, *order);
    }
}
}  // namespace detail

/// Default truncation order for reduction work on this complex: twice the
/// largest Green pole order plus slack for the division cascade.
inline int default_reduction_order(const ComplexFamily& C) {
    int L = 0;
    for (int q = 0; q <= C.length(); ++q) L = std::max(L, green_pole_order(C, q));
    return 2 * L + 4;
}

inline ReductionData schur_reduce(const ComplexFamily& C,
                                  std::optional<int> order = std::nullopt) {
    if (!order) order = default_reduction_order(C);
    int m = C.length();
    ReductionData red;
    red.hodge = hodge_decompose(C);
    const HodgeData& H = red.hodge;
    const Scalar& c = C.center;

    // block coordinates X_q = Tinv_{q+1} P_q T_q and the inverted P32 blocks
    std::vector<SMat> X, inv32;
    for (int q = 0; q < m; ++q) {
        SMat Xq = map_mul(SMat::constant(H.Tinv[static_cast<std::size_t>(q + 1)], c),
                          map_mul(C.map(q), SMat::constant(H.T[static_cast<std::size_t>(q)], c)));
        X.push_back(Xq);
        SMat P32 = sub_map(Xq, H.dim_N(q + 1) + H.dim_Rstar(q + 1), H.dim_N(q),
                           H.dim_R(q + 1), H.dim_Rstar(q));
        inv32.push_back(detail::invert_block(P32, order));
    }

    // reduced maps, homotopy, chain maps
    std::vector<SMat> ptilde_maps;
    std::vector<int> ptilde_dims;
    std::vector<QMat> ptilde_grams;
    for (int q = 0; q <= m; ++q) {
        ptilde_dims.push_back(H.dim_N(q));
        const QMat& bN = H.basis_N[static_cast<std::size_t>(q)];
        ptilde_grams.push_back(bN.conj_transpose() * C.gram(q) * bN);
    }
    for (int q = 0; q < m; ++q) {
        SMat P11 = sub_map(X[static_cast<std::size_t>(q)], 0, 0, H.dim_N(q + 1), H.dim_N(q));
        SMat P12 = sub_map(X[static_cast<std::size_t>(q)], 0, H.dim_N(q), H.dim_N(q + 1),
                           H.dim_Rstar(q));
        SMat P31 = sub_map(X[static_cast<std::size_t>(q)], H.dim_N(q + 1) + H.dim_Rstar(q + 1),
                           0, H.dim_R(q + 1), H.dim_N(q));
        SMat corr = map_mul(P12, map_mul(inv32[static_cast<std::size_t>(q)], P31));
        ptilde_maps.push_back(map_sub(P11, corr));
    }

    for (int q = 0; q <= m; ++q) {
        int n = C.dim(q);
        int dN = H.dim_N(q), dRs = H.dim_Rstar(q), dR = H.dim_R(q);

        // Q_q = T_{q-1} [0 0 0; 0 0 inv32_{q-1}; 0 0 0] Tinv_q
        if (q == 0) {
            red.Q.push_back(SMat(0, n, c));
        } else {
            SMat blockq(C.dim(q - 1), n, c);
            set_block(blockq, H.dim_N(q - 1), dN + dRs, inv32[static_cast<std::size_t>(q - 1)]);
            red.Q.push_back(
                map_mul(SMat::constant(H.T[static_cast<std::size_t>(q - 1)], c),
                        map_mul(blockq, SMat::constant(H.Tinv[static_cast<std::size_t>(q)], c))));
        }

        // Phi_q = [I 0 -P_{q-1,12} inv32_{q-1}] Tinv_q
        SMat third(dN, dR, c);
        if (q > 0 && dR > 0) {
            SMat P12p = sub_map(X[static_cast<std::size_t>(q - 1)], 0, H.dim_N(q - 1), dN,
                                H.dim_Rstar(q - 1));
            third = map_sub(SMat(dN, dR, c),
                            map_mul(P12p, inv32[static_cast<std::size_t>(q - 1)]));
        }
        SMat phi_blocks = hstack_map({SMat::identity(dN, c), SMat(dN, dRs, c), third}, dN, c);
        red.Phi.push_back(
            map_mul(phi_blocks, SMat::constant(H.Tinv[static_cast<std::size_t>(q)], c)));

        // Psi_q = T_q [I; -inv32_q P_{q,31}; 0]
        SMat second(dRs, dN, c);
        if (q < m && dRs > 0) {
            SMat P31q = sub_map(X[static_cast<std::size_t>(q)],
                                H.dim_N(q + 1) + H.dim_Rstar(q + 1), 0, H.dim_R(q + 1), dN);
            second = map_sub(SMat(dRs, dN, c),
                             map_mul(inv32[static_cast<std::size_t>(q)], P31q));
        }
        SMat psi_blocks = vstack_map({SMat::identity(dN, c), second, SMat(dR, dN, c)}, dN, c);
        red.Psi.push_back(
            map_mul(SMat::constant(H.T[static_cast<std::size_t>(q)], c), psi_blocks));
    }

    red.Ptilde = make_complex(c, ptilde_dims, ptilde_maps, ptilde_grams);

    // verified invariants, exact to the known order
    for (int q = 0; q < m; ++q) {
        if (!red.Ptilde.map(q).value_at_center().is_zero())
            throw invariant_violation("schur_reduce: reduced map does not vanish at the center");
        if (q + 1 < m &&
            !map_mul(red.Ptilde.map(q + 1), red.Ptilde.map(q)).is_zero_known())
            throw invariant_violation("schur_reduce: reduced maps do not compose to zero");
    }
    for (int q = 0; q <= m; ++q) {
        const SMat& phi = red.Phi[static_cast<std::size_t>(q)];
        const SMat& psi = red.Psi[static_cast<std::size_t>(q)];
        if (!map_sub(map_mul(phi, psi), SMat::identity(H.dim_N(q), c)).is_zero_known())
            throw invariant_violation("schur_reduce: Phi Psi != I");
        SMat homotopy = SMat::identity(C.dim(q), c);
        if (q < m)
            homotopy = map_sub(homotopy, map_mul(red.Q[static_cast<std::size_t>(q + 1)], C.map(q)));
        if (q > 0)
            homotopy = map_sub(homotopy, map_mul(C.map(q - 1), red.Q[static_cast<std::size_t>(q)]));
        if (!map_sub(map_mul(psi, phi), homotopy).is_zero_known())
            throw invariant_violation("schur_reduce: Psi Phi is not the stated homotopy");
        if (q < m) {
            SMat lhs = map_mul(red.Phi[static_cast<std::size_t>(q + 1)], C.map(q));
            SMat rhs = map_mul(red.Ptilde.map(q), phi);
            if (!map_sub(lhs, rhs).is_zero_known())
                throw invariant_violation("schur_reduce: Phi is not a chain map");
            SMat lhs2 = map_mul(C.map(q), psi);
            SMat rhs2 = map_mul(red.Psi[static_cast<std::size_t>(q + 1)], red.Ptilde.map(q));
            if (!map_sub(lhs2, rhs2).is_zero_known())
                throw invariant_violation("schur_reduce: Psi is not a chain map");
        }
    }
    return red;
}

/// Divides every map of a center-vanishing complex by (s - center).  Each
/// known order drops by one; composition-zero carries over.
inline ComplexFamily sigma_divide(const ComplexFamily& C) {
    auto divide_entry = [](const Series& s) {
        Series t = s;
        t.normalize();
        if (t.c.empty()) {
            if (t.exact) return Series::zero_exact(t.center);
            if (t.ord < 0)
                throw insufficient_truncation(
                    "sigma_divide: order exhausted, constant term not certifiable");
            return Series::zero_trunc(t.center, t.ord - 1);
        }
        if (t.val < 1)
            throw invariant_violation("sigma_divide: a map does not vanish at the center");
        return shift_exponents(t, -1);
    };
    ComplexFamily out = C;
    for (auto& mp : out.maps)
        for (auto& entry : mp.a) entry = divide_entry(entry);
    return out;
}

/// Multiplication by (s - center) on principal parts: the depth-k coefficient
/// of the result is the depth-(k+1) coefficient of the input.
inline PrincipalPart varsigma(const PrincipalPart& u) {
    PrincipalPart out = PrincipalPart::zero(u.center, u.n, u.depth);
    for (int d = 1; d < u.depth; ++d)
        for (int j = 0; j < u.n; ++j) out.coord(d, j) = u.coord(d + 1, j);
    return out;
}

/// Matrix of the induced map of varsigma on a cohomology basis.
inline QMat varsigma_matrix(const ComplexFamily& C, int q, const CohomBasis& b) {
    QMat S(b.dim, b.dim);
    for (int i = 0; i < b.dim; ++i) {
        QMat coords = detail::coords_with_normalization(C, q, b, varsigma(b.rep(i)), "varsigma");
        for (int r = 0; r < b.dim; ++r) S.at(r, i) = coords.at(r, 0);
    }
    return S;
}

namespace detail {
/// Applies a holomorphic family to a principal part and keeps the principal
/// part of the product.
inline PrincipalPart map_apply_singular(const SMat& M, const PrincipalPart& p, int depth) {
    if (M.cols != p.n) throw shape_mismatch("map_apply_singular dimensions");
    if (!(M.center == p.center)) throw center_mismatch("map_apply_singular centers differ");
    std::vector<Series> u = p.to_series();
    std::vector<Series> w;
    for (int i = 0; i < M.rows; ++i) {
        Series acc = Series::zero_exact(M.center);
        for (int j = 0; j < M.cols; ++j)
            acc = series_add(acc, series_mul(M.at(i, j), u[static_cast<std::size_t>(j)]));
        w.push_back(singular_part(acc));
    }
    return PrincipalPart::from_series(w, M.center, depth);
}

/// True when s(P_q u) = 0 is certified.
inline bool is_cocycle(const ComplexFamily& C, int q, const PrincipalPart& u) {
    if (q >= C.length()) return true;
    std::vector<Series> s = u.to_series();
    const SMat& P = C.map(q);
    for (int i = 0; i < P.rows; ++i) {
        Series acc = Series::zero_exact(P.center);
        for (int j = 0; j < P.cols; ++j)
            acc = series_add(acc, series_mul(P.at(i, j), s[static_cast<std::size_t>(j)]));
        if (!singular_is_zero(acc)) return false;
    }
    return true;
}
}  // namespace detail

/// Transports a class pairing through the reduction: the reduced-side pairing
/// of (Phi u, Psi* v) must equal the direct pairing of (u, v) exactly.
/// u is a cocycle of C in degree q at the center; v is a cocycle of the
/// adjoint complex (reversed degree m-q-1) at the conjugated center.
inline Scalar pairing_transport(const ComplexFamily& C, const ReductionData& red, int q,
                                const PrincipalPart& u, const PrincipalPart& v) {
    int m = C.length();
    ComplexFamily D = adjoint_complex(C);
    int r = m - q - 1;
    if (!detail::is_cocycle(C, q, u) || !detail::is_cocycle(D, r, v))
        throw invariant_violation("pairing_transport: inputs are not cocycles");

    Scalar direct = germ_pairing(C.map(q), C.gram(q + 1), u, v);

    PrincipalPart phi_u =
        detail::map_apply_singular(red.Phi[static_cast<std::size_t>(q)], u, u.depth);
    SMat psi_star = adjoint_family(red.Psi[static_cast<std::size_t>(q + 1)],
                                   red.Ptilde.gram(q + 1), C.gram(q + 1));
    PrincipalPart psi_star_v = detail::map_apply_singular(psi_star, v, v.depth);
    Scalar reduced =
        germ_pairing(red.Ptilde.map(q), red.Ptilde.gram(q + 1), phi_u, psi_star_v);
    if (!(direct - reduced).is_zero())
        throw invariant_violation("pairing_transport: reduced pairing disagrees");
    return direct;
}

/// One certified level of the recursive procedure.
struct CertLevel {
    int dim = 0;              // dim H^q of the level complex (direct computation)
    int dim_reduced = 0;      // dim H^q of its Schur reduction (must agree)
    int sigma_rank = 0;       // rank of varsigma on the reduced basis
    int corank = 0;           // dim - sigma_rank: classes created at this level
    std::vector<int> sigma_power_ranks;  // ranks of varsigma^1, ^2, ... until 0
    std::vector<std::pair<int, Scalar>> witnesses;  // per class: partner index, value
};

struct Certificate {
    int degree = 0;
    bool pass = false;
    int dim_direct = 0;     // stabilized cohomology on the input complex
    int dim_recursive = 0;  // sum of per-level coranks
    QMat pairing_direct;
    std::vector<CertLevel> levels;
    std::optional<QMat> null_class;  // coordinates of a class pairing to zero
    std::string failure;
};

/// Executable form of the inductive duality proof.  The complex is translated
/// to center 0 and repeatedly Schur-reduced and divided by s; every level
/// records dimensions, the varsigma filtration, and dual partners, and every
/// structural identity (reduction invariants, transport, the j/varsigma range
/// equality, the division pairing identity) is checked exactly.  The level-0
/// results must reproduce the direct route exactly.
inline Certificate recursive_certify(const ComplexFamily& C0, int q,
                                     std::optional<int> order = std::nullopt,
                                     bool checked = true) {
    if (q < 0 || q >= C0.length())
        throw shape_mismatch("recursive_certify degree out of range");
    if (!order) order = default_reduction_order(C0);

    Certificate cert;
    cert.degree = q;

    CohomBasis direct_basis = stabilized_cohomology(C0, q);
    cert.dim_direct = direct_basis.dim;
    PairingMatrix direct_pm = cohomology_pairing_matrix(C0, q, checked);
    cert.pairing_direct = direct_pm.entries;

    ComplexFamily cur = translate_complex(C0, C0.center);  // center 0
    {
        // translation invariance of the direct route, verified exactly
        PairingMatrix pm0 = cohomology_pairing_matrix(cur, q, checked);
        if (!(pm0.entries == direct_pm.entries))
            throw invariant_violation("recursive_certify: pairing not translation invariant");
    }

    int total_dim = 0;
    for (int d : C0.dims) total_dim += d;
    int cap = *order + total_dim + 4;

    bool finished = false;
    for (int level = 0; level <= cap && !finished; ++level) {
        CertLevel lev;
        CohomBasis basis = stabilized_cohomology(cur, q);
        lev.dim = basis.dim;
        PairingMatrix pm = cohomology_pairing_matrix(cur, q, checked);
        NondegVerdict nv = certify_nondegenerate(pm);

        if (basis.dim == 0) {
            lev.dim_reduced = 0;
            cert.levels.push_back(lev);
            cert.pass = true;
            finished = true;
            continue;
        }
        if (!nv.pass) {
            cert.levels.push_back(lev);
            cert.null_class = nv.null_u ? nv.null_u : nv.null_v;
            cert.failure = "degenerate pairing at level " + std::to_string(level);
            cert.pass = false;
            finished = true;
            continue;
        }
        for (int i = 0; i < basis.dim; ++i)
            for (int j = 0; j < pm.basis_v.dim; ++j)
                if (!pm.entries.at(i, j).is_zero()) {
                    lev.witnesses.emplace_back(j, pm.entries.at(i, j));
                    break;
                }
        if (static_cast<int>(lev.witnesses.size()) != basis.dim)
            throw invariant_violation("recursive_certify: nondegenerate matrix with a zero row");

        // Schur step: isomorphic cohomology on the N-space complex
        ReductionData red = schur_reduce(cur, order);
        CohomBasis basis_t = stabilized_cohomology(red.Ptilde, q);
        lev.dim_reduced = basis_t.dim;
        if (basis_t.dim != basis.dim)
            throw invariant_violation("recursive_certify: Schur reduction changed the dimension");

        // transport of the pairing on all basis pairs
        for (int i = 0; i < basis.dim; ++i)
            for (int j = 0; j < pm.basis_v.dim; ++j) {
                Scalar moved = pairing_transport(cur, red, q, basis.rep(i), pm.basis_v.rep(j));
                if (!(moved - pm.entries.at(i, j)).is_zero())
                    throw invariant_violation("recursive_certify: transported pairing differs");
            }

        // division step
        ComplexFamily hat = sigma_divide(red.Ptilde);
        CohomBasis basis_hat = stabilized_cohomology(hat, q);

        // varsigma filtration on the reduced basis
        QMat S = varsigma_matrix(red.Ptilde, q, basis_t);
        QMat power = S;
        int guard = 0;
        while (true) {
            int rk = rank(power);
            lev.sigma_power_ranks.push_back(rk);
            if (rk == 0) break;
            if (++guard > basis_t.depth_used + 1)
                throw invariant_violation("recursive_certify: varsigma is not nilpotent");
            power = S * power;
        }
        lev.sigma_rank = lev.sigma_power_ranks.front();
        lev.corank = basis_t.dim - lev.sigma_rank;

        // j : H^q(hat) -> H^q(tilde), identity on representatives; it must be
        // injective with range equal to the range of varsigma
        QMat J(basis_t.dim, basis_hat.dim);
        for (int i = 0; i < basis_hat.dim; ++i) {
            QMat coords = detail::coords_with_normalization(red.Ptilde, q, basis_t,
                                                            basis_hat.rep(i), "j map");
            for (int r = 0; r < basis_t.dim; ++r) J.at(r, i) = coords.at(r, 0);
        }
        if (rank(J) != basis_hat.dim)
            throw invariant_violation("recursive_certify: j map is not injective");
        if (!same_column_span(J, S))
            throw invariant_violation("recursive_certify: range(j) != range(varsigma)");

        // division pairing identity <j u, v>_{tilde} = <u, varsigma v>_{hat}
        // on all (hat basis) x (tilde partner basis) pairs
        CohomBasis partner_t = adjoint_partner_basis(red.Ptilde, q);
        for (int i = 0; i < basis_hat.dim; ++i)
            for (int j = 0; j < partner_t.dim; ++j) {
                Scalar lhs = germ_pairing(red.Ptilde.map(q), red.Ptilde.gram(q + 1),
                                          basis_hat.rep(i), partner_t.rep(j));
                Scalar rhs = germ_pairing(hat.map(q), hat.gram(q + 1), basis_hat.rep(i),
                                          varsigma(partner_t.rep(j)));
                if (!(lhs - rhs).is_zero())
                    throw invariant_violation(
                        "recursive_certify: division pairing identity fails");
            }

        cert.levels.push_back(lev);
        cur = hat;
    }
    if (!finished) throw invariant_violation("recursive_certify: level budget exhausted");

    for (const auto& lev : cert.levels) cert.dim_recursive += lev.corank;
    if (cert.pass && cert.dim_recursive != cert.dim_direct)
        throw invariant_violation("recursive_certify: recursive and direct dimensions differ");
    return cert;
}

}  // namespace laurel

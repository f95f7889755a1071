#pragma once

// Indicial data and the aligned straight complex.  A degree-1 pencil
// A_q(s) = bP_q + s Lambda_q satisfying the shifted composition identity
// A_{q+1}(s + i) A_q(s) = 0 does not compose to zero at equal arguments;
// evaluating each member at s + i(q' - q) + i(gamma - 1/2) aligns the
// shifts so the resulting family is a genuine chain complex.

#include <vector>

#include "complex_family.hpp"

namespace laurel {

struct IndicialInput {
    std::vector<int> dims;     // n_0 .. n_m
    std::vector<QMat> bP;      // bP_q : n_q -> n_{q+1}
    std::vector<QMat> Lambda;  // Lambda_q : n_q -> n_{q+1}
    Rat gamma = Rat(1, 2);     // weight
    int anchor_degree = 0;     // the degree whose member is evaluated at s itself
    std::vector<QMat> grams;   // optional, defaults to identities

    int length() const { return static_cast<int>(dims.size()) - 1; }
};

/// Verify the coefficient identities of the shifted composition
/// A_{q+1}(s+i) A_q(s) = 0, expanded by powers of s:
///   s^2 :  Lambda_{q+1} Lambda_q = 0
///   s^1 :  bP_{q+1} Lambda_q + Lambda_{q+1} bP_q + i Lambda_{q+1} Lambda_q = 0
///   s^0 :  bP_{q+1} bP_q + i Lambda_{q+1} bP_q = 0
/// and exactness of the Lambda sequence at the inner degrees.  Violations are
/// reported with the failing degree and s-exponent.
inline ValidationReport validate_indicial(const IndicialInput& in) {
    ValidationReport rep;
    int m = in.length();
    if (in.bP.size() != static_cast<std::size_t>(m) ||
        in.Lambda.size() != static_cast<std::size_t>(m))
        throw shape_mismatch("indicial data needs one bP and Lambda per map");
    for (int q = 0; q < m; ++q) {
        if (in.bP[q].rows != in.dims[q + 1] || in.bP[q].cols != in.dims[q])
            throw shape_mismatch("bP_" + std::to_string(q) + " has wrong shape");
        if (in.Lambda[q].rows != in.dims[q + 1] || in.Lambda[q].cols != in.dims[q])
            throw shape_mismatch("Lambda_" + std::to_string(q) + " has wrong shape");
    }
    for (int q = 0; q + 1 < m; ++q) {
        QMat ll = in.Lambda[q + 1] * in.Lambda[q];
        if (!ll.is_zero())
            rep.fail("degree " + std::to_string(q) + ": s^2 coefficient Lambda Lambda != 0");
        QMat lin = in.bP[q + 1] * in.Lambda[q] + in.Lambda[q + 1] * in.bP[q] +
                   Scalar::i() * (in.Lambda[q + 1] * in.Lambda[q]);
        if (!lin.is_zero())
            rep.fail("degree " + std::to_string(q) + ": s^1 coefficient != 0");
        QMat cst = in.bP[q + 1] * in.bP[q] + Scalar::i() * (in.Lambda[q + 1] * in.bP[q]);
        if (!cst.is_zero())
            rep.fail("degree " + std::to_string(q) + ": s^0 coefficient != 0");
    }
    // Lambda exactness at inner degrees: ker Lambda_q = rg Lambda_{q-1}.
    for (int q = 1; q < m; ++q) {
        int k = in.dims[q] - rank(in.Lambda[q]);
        int r = rank(in.Lambda[q - 1]);
        if (k != r)
            rep.fail("Lambda sequence not exact at degree " + std::to_string(q) +
                     " (ker dim " + std::to_string(k) + ", range dim " + std::to_string(r) +
                     ")");
    }
    return rep;
}

/// The aligned straight complex: P_{q'}(s) = bP_{q'} + (s + c_{q'}) Lambda_{q'}
/// with c_{q'} = i (q' - anchor) + i (gamma - 1/2), built at the given center
/// (expansion point; the family is polynomial, so any center is exact).
inline ComplexFamily build_indicial(const IndicialInput& in,
                                    const Scalar& center = Scalar::zero()) {
    ValidationReport rep = validate_indicial(in);
    if (!rep.ok) {
        std::string msg = "indicial identities violated:";
        for (const auto& s : rep.issues) msg += " [" + s + "]";
        throw invariant_violation(msg);
    }
    int m = in.length();
    std::vector<SMat> maps;
    for (int q = 0; q < m; ++q) {
        Scalar c(Rat(0), Rat(q - in.anchor_degree) + (in.gamma - Rat(1, 2)));
        // bP + (s + c) Lambda as a polynomial in t = s - center:
        // constant term bP + (center + c) Lambda, linear term Lambda.
        SMat p(in.dims[q + 1], in.dims[q], center);
        QMat c0 = in.bP[q] + (center + c) * in.Lambda[q];
        for (int i = 0; i < p.rows; ++i)
            for (int j = 0; j < p.cols; ++j) {
                Series s = Series::monomial(center, c0.at(i, j), 0);
                s = series_add(s, Series::monomial(center, in.Lambda[q].at(i, j), 1));
                p.at(i, j) = s;
            }
        maps.push_back(std::move(p));
    }
    return make_complex(center, in.dims, std::move(maps), in.grams);
}

/// Recover indicial data from a straight degree-1 complex P_q(s) = C_q + s D_q
/// (coefficients read off the expansion re-expanded at 0): Lambda_q = D_q and
/// bP_q = C_q - (i(q - anchor) + i(gamma - 1/2)) D_q.  Grams are carried over.
inline IndicialInput extract_indicial(const ComplexFamily& C, const Rat& gamma,
                                      int anchor_degree) {
    IndicialInput in;
    in.dims = C.dims;
    in.gamma = gamma;
    in.anchor_degree = anchor_degree;
    in.grams = C.grams;
    int m = C.length();
    for (int q = 0; q < m; ++q) {
        SMat at0 = C.map(q).all_exact() ? recenter(C.map(q), Scalar::zero()) : C.map(q);
        if (!at0.all_exact() && !at0.center.is_zero())
            throw insufficient_truncation("extract_indicial needs exact maps or center 0");
        if (at0.max_degree() > 1)
            throw invariant_violation("extract_indicial: map degree exceeds 1");
        QMat c0 = at0.coeff_matrix(0);
        QMat d = at0.coeff_matrix(1);
        Scalar c(Rat(0), Rat(q - anchor_degree) + (gamma - Rat(1, 2)));
        in.Lambda.push_back(d);
        in.bP.push_back(c0 - c * d);
    }
    return in;
}

}  // namespace laurel

#pragma once

// Boundary spectrum scans: the determinant of the Laplacian family as an
// exact polynomial (Lagrange interpolation at integer nodes), complete
// Q(i)-linear-factor extraction of its roots, and stabilized cohomology at
// every resolved candidate after exact re-centering.  Root factors that are
// irreducible over Q(i) are carried verbatim, never approximated.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "germ_cohom.hpp"
#include "parallel.hpp"
#include "polyroots.hpp"

namespace laurel {

/// Exact determinant of a polynomial family as a polynomial in the local
/// coordinate t = sigma - center: evaluated at integer nodes 0..D (D = the
/// row-degree bound) and interpolated.
inline QiPoly det_family_poly(const SMat& box) {
    if (box.rows != box.cols) throw shape_mismatch("determinant of a non-square family");
    int D = 0;
    for (int i = 0; i < box.rows; ++i) {
        int rowmax = 0;
        for (int j = 0; j < box.cols; ++j) {
            const Series& s = box.at(i, j);
            if (!s.exact || (s.val < 0 && !s.c.empty()))
                throw invariant_violation("determinant interpolation needs polynomial entries");
            if (!s.c.empty()) rowmax = std::max(rowmax, s.ord);
        }
        D += rowmax;
    }
    std::vector<Scalar> xs, ys;
    for (int t = 0; t <= D; ++t) {
        xs.push_back(Scalar(Rat(t)));
        ys.push_back(det(evaluate(box, box.center + Scalar(Rat(t)))));
    }
    Series p = interpolate(xs, ys, box.center);
    if (p.c.empty()) return QiPoly::zero();
    std::vector<Scalar> coeffs(static_cast<std::size_t>(p.ord + 1), Scalar::zero());
    for (int k = p.val; k <= p.ord; ++k)
        coeffs[static_cast<std::size_t>(k)] = p.c[static_cast<std::size_t>(k - p.val)];
    return QiPoly::from_coeffs(std::move(coeffs));
}

struct SpectrumPoint {
    Scalar sigma0;
    int dim = 0;
    int depth = 0;  // stabilized depth the dimension was certified at
};

struct SpectrumReport {
    int degree = 0;
    Scalar center;   // the unresolved factors are polynomials in t = sigma - center
    QiPoly det_poly; // determinant of the Laplacian family (empty when candidates were supplied)
    std::vector<SpectrumPoint> spectrum;             // candidates with nonzero cohomology
    std::vector<SpectrumPoint> certified_zero;       // candidates certified exact
    std::vector<std::pair<QiPoly, int>> unresolved;  // rootless square-free factors, multiplicity
};

/// Boundary spectrum of the complex in degree q: every point where the germ
/// cohomology is nonzero.  Without an explicit candidate list the candidates
/// are the Q(i) roots of det of the degree-q Laplacian family, which requires
/// polynomial maps; candidates are evaluated independently (in parallel) and
/// reported in a deterministic sorted order.
inline SpectrumReport spectrum_scan(const ComplexFamily& C, int q,
                                    std::optional<std::vector<Scalar>> candidates = std::nullopt) {
    if (q < 0 || q > C.length()) throw shape_mismatch("spectrum degree out of range");
    SpectrumReport rep;
    rep.degree = q;
    rep.center = C.center;
    std::vector<Scalar> sigma;
    if (candidates) {
        sigma = *candidates;
        std::sort(sigma.begin(), sigma.end(), scalar_less);
        sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
    } else {
        if (!C.all_exact())
            throw invariant_violation(
                "spectrum scan of a non-polynomial family needs an explicit candidate list");
        rep.det_poly = det_family_poly(laplacian_family(C, q));
        if (rep.det_poly.is_zero())
            throw singular_input("Laplacian determinant vanishes identically");
        RootExtraction ext = qi_roots(rep.det_poly);
        rep.unresolved = std::move(ext.unresolved);
        for (const auto& [root, mult] : ext.roots) {
            (void)mult;
            sigma.push_back(C.center + root);  // roots sorted; the shift keeps the order
        }
    }
    std::vector<SpectrumPoint> pts(sigma.size());
    detail::parallel_for(static_cast<int>(sigma.size()), [&](int idx) {
        const Scalar& s0 = sigma[static_cast<std::size_t>(idx)];
        CohomBasis b;
        if (s0 == C.center) {
            b = stabilized_cohomology(C, q);
        } else {
            std::vector<SMat> mv;
            mv.reserve(C.maps.size());
            for (const auto& m : C.maps) mv.push_back(recenter(m, s0));
            b = stabilized_cohomology(make_complex(s0, C.dims, std::move(mv), C.grams), q);
        }
        pts[static_cast<std::size_t>(idx)] = SpectrumPoint{s0, b.dim, b.depth_used};
    });
    for (const auto& p : pts) (p.dim > 0 ? rep.spectrum : rep.certified_zero).push_back(p);
    return rep;
}

}  // namespace laurel

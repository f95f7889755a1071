#pragma once

// Holomorphic families of finite chain complexes with inner-product data:
// validation, adjoint complexes, Laplacian families with the exact
// conjugate-line shift, Green pole orders, and center motions.

#include <string>
#include <vector>

#include "map_family.hpp"

namespace laurel {

/// A complex 0 -> V_0 -> ... -> V_m -> 0 of holomorphic map families
/// P_q : V_q -> V_{q+1} at a shared center, with a Hermitian positive
/// definite inner product on every V_q.
struct ComplexFamily {
    Scalar center;
    std::vector<int> dims;    // n_0 .. n_m
    std::vector<SMat> maps;   // P_0 .. P_{m-1}, maps[q] is n_{q+1} x n_q
    std::vector<QMat> grams;  // G_0 .. G_m

    int length() const { return static_cast<int>(dims.size()) - 1; }

    const SMat& map(int q) const { return maps[static_cast<std::size_t>(q)]; }
    const QMat& gram(int q) const { return grams[static_cast<std::size_t>(q)]; }
    int dim(int q) const { return dims[static_cast<std::size_t>(q)]; }

    bool all_exact() const {
        for (const auto& m : maps)
            if (!m.all_exact()) return false;
        return true;
    }

    int known_upto() const {
        int w = INT_MAX;
        for (const auto& m : maps) w = std::min(w, m.known_upto());
        return w;
    }
};

/// Assemble and shape-check a complex; omitted grams default to identities.
inline ComplexFamily make_complex(const Scalar& center, std::vector<int> dims,
                                  std::vector<SMat> maps, std::vector<QMat> grams = {}) {
    if (dims.empty()) throw shape_mismatch("complex needs at least one degree");
    if (maps.size() + 1 != dims.size())
        throw shape_mismatch("complex needs one map fewer than degrees");
    for (std::size_t q = 0; q < maps.size(); ++q) {
        if (maps[q].rows != dims[q + 1] || maps[q].cols != dims[q])
            throw shape_mismatch("map " + std::to_string(q) + " has wrong shape");
        if (maps[q].center != center)
            throw center_mismatch("map " + std::to_string(q) + " at a different center");
    }
    if (grams.empty())
        for (int n : dims) grams.push_back(QMat::identity(n));
    if (grams.size() != dims.size()) throw shape_mismatch("gram count mismatch");
    for (std::size_t q = 0; q < grams.size(); ++q)
        if (grams[q].rows != dims[q] || grams[q].cols != dims[q])
            throw shape_mismatch("gram " + std::to_string(q) + " has wrong shape");
    ComplexFamily c;
    c.center = center;
    c.dims = std::move(dims);
    c.maps = std::move(maps);
    c.grams = std::move(grams);
    return c;
}

struct ValidationReport {
    bool ok = true;
    /// true when every map is exact, so composition-zero is certified as an
    /// identity of polynomials rather than up to truncation order.
    bool exact_certificate = true;
    std::vector<std::string> issues;

    void fail(const std::string& msg) {
        ok = false;
        issues.push_back(msg);
    }
};

/// Check the complex property P_{q+1} P_q = 0 (to the provable order) and the
/// inner-product axioms.  Violations are reported with the degree, the first
/// bad exponent, and the entry.
inline ValidationReport validate_complex(const ComplexFamily& C) {
    ValidationReport rep;
    rep.exact_certificate = C.all_exact();
    for (std::size_t q = 0; q < C.grams.size(); ++q) {
        if (!is_hermitian(C.grams[q]))
            rep.fail("gram " + std::to_string(q) + " is not hermitian");
        else if (!is_positive_definite(C.grams[q]))
            rep.fail("gram " + std::to_string(q) + " is not positive definite");
    }
    for (int q = 0; q + 1 < C.length(); ++q) {
        SMat comp = map_mul(C.map(q + 1), C.map(q));
        for (int i = 0; i < comp.rows; ++i)
            for (int j = 0; j < comp.cols; ++j) {
                const Series& s = comp.at(i, j);
                if (!s.is_zero_known())
                    rep.fail("composition P_" + std::to_string(q + 1) + " P_" +
                             std::to_string(q) + " nonzero at exponent " +
                             std::to_string(s.val) + ", entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
            }
    }
    return rep;
}

/// The adjoint family of P_q with the complex's inner products, relabeled
/// from conj(center) back to the center by the exact translation along
/// -2i Im(center).  This is the factor that enters Laplacians and pairings:
/// as a function, shifted_adjoint(C,q)(s) = P_q*(s - 2i Im center).
inline SMat shifted_adjoint(const ComplexFamily& C, int q) {
    SMat star = adjoint_family(C.map(q), C.gram(q), C.gram(q + 1));
    Scalar theta = C.center.conj() - C.center;  // -2i Im(center)
    return translate(star, theta);
}

/// Laplacian family at degree q:
///   box_q(s) = P_q*(s - 2i Im c) P_q(s) + P_{q-1}(s) P_{q-1}*(s - 2i Im c),
/// an n_q x n_q family at the center, Hermitian-valued on the horizontal
/// line through it.
inline SMat laplacian_family(const ComplexFamily& C, int q) {
    if (q < 0 || q > C.length()) throw shape_mismatch("laplacian degree out of range");
    SMat box(C.dim(q), C.dim(q), C.center);
    if (q < C.length()) box = map_mul(shifted_adjoint(C, q), C.map(q));
    if (q > 0) {
        SMat second = map_mul(C.map(q - 1), shifted_adjoint(C, q - 1));
        box = (q < C.length()) ? map_add(box, second) : second;
    }
    return box;
}

/// The adjoint complex: degrees reversed in arrow so that the adjoints form
/// a chain complex again, at center conj(C.center).  Degree r of the result
/// is V_{m-r} with gram G_{m-r}, and its map r is (P_{m-1-r})*.
inline ComplexFamily adjoint_complex(const ComplexFamily& C) {
    int m = C.length();
    ComplexFamily D;
    D.center = C.center.conj();
    for (int r = 0; r <= m; ++r) {
        D.dims.push_back(C.dim(m - r));
        D.grams.push_back(C.gram(m - r));
    }
    for (int r = 0; r < m; ++r)
        D.maps.push_back(adjoint_family(C.map(m - 1 - r), C.gram(m - 1 - r), C.gram(m - r)));
    return D;
}

/// Largest local diagonal exponent of the Laplacian family at degree q: the
/// pole order of the Green family box_q(s)^{-1} at the center.  Requires the
/// Laplacian to be invertible near the center (nonzero determinant germ).
inline int green_pole_order(const ComplexFamily& C, int q) {
    SMat box = laplacian_family(C, q);
    if (box.rows == 0) return 0;
    SmithForm sf = local_smith_form(box);
    if (sf.rank < box.rows)
        throw singular_input(
            "green_pole_order: Laplacian family is singular near the center (determinant "
            "vanishes identically to the available order)");
    return sf.exponents.empty() ? 0 : sf.exponents.back();
}

/// Translate the whole complex: every map by tau_theta, center to
/// center - theta.  Exact for polynomial families (or theta = 0).
inline ComplexFamily translate_complex(const ComplexFamily& C, const Scalar& theta) {
    ComplexFamily D = C;
    D.center = C.center - theta;
    for (auto& m : D.maps) m = translate(m, theta);
    return D;
}

/// Re-expand an exact polynomial complex around a new center (the family is
/// unchanged as a function; only the expansion point moves).
inline ComplexFamily recenter_complex(const ComplexFamily& C, const Scalar& new_center) {
    ComplexFamily D = C;
    D.center = new_center;
    for (auto& m : D.maps) m = recenter(m, new_center);
    return D;
}

}  // namespace laurel

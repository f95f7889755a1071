#pragma once

// The bridge between log-polynomial cone sections and principal parts.
//
// A section u = sum_k c_k x^{i s0} log^k x has a Mellin transform which is
// meromorphic with its only pole at s0; the singular part determines u and
// vice versa.  The coefficient of (s - s0)^{-(k+1)} is m_k c_k with
// m_k = (-1)^k k! i^{k+1}, a formula validated against two independent
// integration oracles (the integration-by-parts recursion I_k = -(k/a) I_{k-1}
// and k-fold differentiation of I_0 = 1/a under the integral, with
// a = -i(s - s0)) before being wired in here; the test suite re-runs both
// oracles.
//
// On top of the correspondence sit the shift isomorphisms Theta (re-centering
// composed with the transform), the reflection s* = conj(s - i(2 gamma - 1))
// about the line Im s = gamma - 1/2, and the assembly of the adjoint pairing
// over a strip of points: only points paired with their own reflection can
// contribute, and the cross residues of every other pair are computed and
// required to vanish identically.

#include <optional>
#include <string>
#include <vector>

#include "indicial.hpp"
#include "pairing.hpp"
#include "parallel.hpp"
#include "reduction.hpp"

namespace laurel {

// ---------------------------------------------------------------------------
// Log-polynomial sections
// ---------------------------------------------------------------------------

/// A finite log-polynomial section  sum_{k=0}^{N} c_k x^{i exponent} log^k x
/// with vector coefficients c_k (n x 1).  The stored coefficient count is
/// representational; trailing zero coefficients do not change the section.
struct LogSection {
    Scalar exponent;            // the exponent s0 of x^{i s0}
    int n = 0;                  // fiber dimension
    std::vector<QMat> coeffs;   // c_0 .. c_N

    static LogSection zero(const Scalar& exponent, int n, int count) {
        LogSection u;
        u.exponent = exponent;
        u.n = n;
        u.coeffs.assign(static_cast<std::size_t>(count), QMat(n, 1));
        return u;
    }

    void check() const {
        if (n < 0) throw shape_mismatch("log section with negative dimension");
        for (const QMat& c : coeffs)
            if (c.rows != n || c.cols != 1)
                throw shape_mismatch("log section coefficient is not an n x 1 vector");
    }

    /// c_k, with zero returned beyond the stored range.
    QMat coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(coeffs.size())) return QMat(n, 1);
        return coeffs[static_cast<std::size_t>(k)];
    }

    /// Highest k with c_k != 0; -1 for the zero section.
    int log_degree() const {
        for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
            if (!coeffs[static_cast<std::size_t>(k)].is_zero()) return k;
        return -1;
    }

    bool is_zero() const { return log_degree() < 0; }
};

/// Equality as sections: same exponent and dimension, same coefficients up to
/// trailing zeros.
inline bool equal_sections(const LogSection& a, const LogSection& b) {
    if (!(a.exponent == b.exponent) || a.n != b.n) return false;
    std::size_t hi = std::max(a.coeffs.size(), b.coeffs.size());
    for (std::size_t k = 0; k < hi; ++k)
        if (!(a.coeff(static_cast<int>(k)) == b.coeff(static_cast<int>(k)))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// The singular-part correspondence
// ---------------------------------------------------------------------------

namespace detail {

/// m_k = (-1)^k k! i^{k+1}: the singular coefficient of the Mellin transform
/// of x^{i s0} log^k x at depth k+1.  Built by the ratio m_k / m_{k-1} = -k i.
inline Scalar mellin_weight(int k) {
    Scalar w = Scalar::i();
    for (int j = 1; j <= k; ++j) w = w * Scalar(Rat(0), Rat(-j));
    return w;
}

}  // namespace detail

/// Singular part of the Mellin transform: depth d = k+1 carries m_k c_k.
/// A linear bijection from log-degree <= N sections onto pole-order <= N+1
/// principal parts at the same point.
inline PrincipalPart mellin_singular(const LogSection& u) {
    u.check();
    int depth = static_cast<int>(u.coeffs.size());
    PrincipalPart p = PrincipalPart::zero(u.exponent, u.n, depth);
    for (int k = 0; k < depth; ++k) {
        Scalar w = detail::mellin_weight(k);
        for (int j = 0; j < u.n; ++j)
            p.coord(k + 1, j) = w * u.coeffs[static_cast<std::size_t>(k)].at(j, 0);
    }
    return p;
}

/// The inverse correspondence (the contour-integral inverse reduces to
/// dividing each depth by its weight): c_k = p_{k+1} / m_k.
inline LogSection mellin_inverse(const PrincipalPart& p) {
    LogSection u = LogSection::zero(p.center, p.n, p.depth);
    for (int k = 0; k < p.depth; ++k) {
        Scalar winv = Scalar::one() / detail::mellin_weight(k);
        for (int j = 0; j < p.n; ++j)
            u.coeffs[static_cast<std::size_t>(k)].at(j, 0) = winv * p.coord(k + 1, j);
    }
    return u;
}

// ---------------------------------------------------------------------------
// The physical action of an affine pencil on log sections
// ---------------------------------------------------------------------------

namespace detail {

/// Action of the model operator of the pencil s -> B + s L on a log section:
/// the exponent moves up by i and the coefficients become
///   d_k = (B + s0 L) c_k - i (k+1) L c_{k+1},
/// the unique action intertwined with multiplication by the pencil on
/// singular parts (the contribution of log^{k+1} through the pencil's linear
/// term lands on log^k with the factor -i(k+1) = m_{k+1}/m_k).
inline LogSection pencil_apply(const QMat& B, const QMat& L, const LogSection& u) {
    u.check();
    if (B.cols != u.n || L.cols != u.n || B.rows != L.rows)
        throw shape_mismatch("pencil_apply dimensions");
    LogSection out = LogSection::zero(u.exponent + Scalar::i(), B.rows,
                                      static_cast<int>(u.coeffs.size()));
    QMat at = B + u.exponent * L;
    for (int k = 0; k < static_cast<int>(u.coeffs.size()); ++k) {
        QMat d = at * u.coeffs[static_cast<std::size_t>(k)];
        QMat next = u.coeff(k + 1);
        if (!next.is_zero()) d = d + Scalar(Rat(0), Rat(-(k + 1))) * (L * next);
        out.coeffs[static_cast<std::size_t>(k)] = d;
    }
    return out;
}

/// The family s -> B + s L as a matrix of exact polynomials at `center`.
inline SMat pencil_family(const QMat& B, const QMat& L, const Scalar& center) {
    SMat p(B.rows, B.cols, center);
    QMat c0 = B + center * L;
    for (int i = 0; i < p.rows; ++i)
        for (int j = 0; j < p.cols; ++j) {
            Series s = Series::monomial(center, c0.at(i, j), 0);
            s = series_add(s, Series::monomial(center, L.at(i, j), 1));
            p.at(i, j) = s;
        }
    return p;
}

inline bool pp_equal(const PrincipalPart& a, const PrincipalPart& b) {
    if (!(a.center == b.center) || a.n != b.n) return false;
    int depth = std::max(a.depth, b.depth);
    for (int d = 1; d <= depth; ++d)
        for (int j = 0; j < a.n; ++j) {
            Scalar x = d <= a.depth ? a.coord(d, j) : Scalar::zero();
            Scalar y = d <= b.depth ? b.coord(d, j) : Scalar::zero();
            if (!(x == y)) return false;
        }
    return true;
}

}  // namespace detail

/// Physical action of the degree-q' model operator of an indicial pencil on a
/// log section at any exponent (the alignment constants never enter the
/// physical action; they belong to the family picture).
inline LogSection log_section_apply(const IndicialInput& in, int qp, const LogSection& u) {
    if (qp < 0 || qp >= in.length())
        throw shape_mismatch("log_section_apply: no map at this degree");
    if (u.n != in.dims[static_cast<std::size_t>(qp)])
        throw shape_mismatch("log_section_apply: section dimension mismatch");
    return detail::pencil_apply(in.bP[static_cast<std::size_t>(qp)],
                                in.Lambda[static_cast<std::size_t>(qp)], u);
}

// ---------------------------------------------------------------------------
// Shift isomorphisms Theta
// ---------------------------------------------------------------------------

/// Theta^q_{q'} u = tau_{i(q'-q)} (mellin_singular u): the singular part of
/// the Mellin transform, re-centered from the section's exponent
/// s0 + i(q'-q) down to s0.  Re-centering a principal part is an exact
/// relabeling: the finitely many coefficients are unchanged.
inline PrincipalPart theta_iso(const LogSection& u, int q, int qp) {
    PrincipalPart p = mellin_singular(u);
    p.center = u.exponent - Scalar(Rat(0), Rat(qp - q));
    return p;
}

/// Checked variant: additionally verifies, coefficient for coefficient, the
/// intertwining square of Theta with the given indicial pencil whenever the
/// outgoing map at q' exists:
///
///   Theta^q_{q'+1} (model action at q')  =  s[A_{q'}(. + i(q'-q))] Theta^q_{q'}.
///
/// The right-hand family is the pencil aligned with anchor q at symmetric
/// weight; the input's own anchor and weight fields are deliberately ignored
/// because the square is a statement about the raw pencil.
inline PrincipalPart theta_iso(const LogSection& u, int q, int qp, const IndicialInput& in) {
    if (qp < 0 || qp > in.length())
        throw shape_mismatch("theta_iso: degree outside the complex");
    if (u.n != in.dims[static_cast<std::size_t>(qp)])
        throw shape_mismatch("theta_iso: section dimension mismatch");
    PrincipalPart p = theta_iso(u, q, qp);
    if (qp < in.length() && p.depth > 0) {
        LogSection au = log_section_apply(in, qp, u);
        PrincipalPart physical = theta_iso(au, q, qp + 1);
        IndicialInput aligned = in;
        aligned.anchor_degree = q;
        aligned.gamma = Rat(1, 2);
        ComplexFamily F = build_indicial(aligned, p.center);
        PrincipalPart germ = detail::map_apply_singular(F.map(qp), p, p.depth);
        if (!detail::pp_equal(physical, germ))
            throw invariant_violation("theta_iso: intertwining square does not commute");
    }
    return p;
}

// ---------------------------------------------------------------------------
// The reflection s* and strip configurations
// ---------------------------------------------------------------------------

/// s* = conj(s0 - i(2 gamma - 1)): the reflection about the horizontal line
/// Im s = gamma - 1/2.  An involution; fixes exactly that line; preserves the
/// open strip gamma - 1 < Im s < gamma.
inline Scalar sigma_star(const Scalar& s0, const Rat& gamma) {
    return (s0 - Scalar(Rat(0), Rat(2) * gamma - Rat(1))).conj();
}

/// A rational weight and a list of distinct points strictly inside the open
/// strip gamma - 1 < Im s < gamma.
struct StripConfig {
    Rat gamma = Rat(1, 2);
    std::vector<Scalar> points;
};

inline void validate_strip(const StripConfig& cfg) {
    for (const Scalar& p : cfg.points) {
        if (!(p.im > cfg.gamma - Rat(1)) || !(p.im < cfg.gamma))
            throw invariant_violation("strip point " + to_string(p) +
                                      " is not strictly inside the open strip");
    }
    for (std::size_t a = 0; a < cfg.points.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.points.size(); ++b)
            if (cfg.points[a] == cfg.points[b])
                throw invariant_violation("strip points must be distinct");
}

// ---------------------------------------------------------------------------
// The strip pairing
// ---------------------------------------------------------------------------

/// Result of assembling the adjoint pairing over a strip.  Entry (a, b) of
/// `per_point` is i times the residue at points[a] of
///   < A_q(s) (Mellin u_a)(s), (Mellin v_b)(s*) >_{G_{q+1}},
/// where u_a lives at points[a] and v_b at the reflection of points[b]; the
/// total is the trace of the matching a = b.  All mismatched entries (a != b)
/// are computed through re-expansion and must vanish identically.
struct StripPairingResult {
    Scalar total;
    QMat per_point;
    std::vector<Scalar> reflected;  // the reflections of cfg.points, in order
};

/// Assemble the pairing between degree-q data for the pencil and degree-(q+1)
/// data for its adjoint over the configured strip points.  u_data[a], when
/// present, is a section at exponent cfg.points[a] closed under the model
/// operator; v_data[b], when present, is a section at the reflected exponent
/// closed under the adjoint model operator at weight cfg.gamma.
inline StripPairingResult strip_pairing(const IndicialInput& in, int q, const StripConfig& cfg,
                                        const std::vector<std::optional<LogSection>>& u_data,
                                        const std::vector<std::optional<LogSection>>& v_data) {
    int m = in.length();
    if (q < 0 || q >= m) throw shape_mismatch("strip_pairing: no map at this degree");
    {
        ValidationReport rep = validate_indicial(in);
        if (!rep.ok) {
            std::string msg = "strip_pairing: indicial identities violated:";
            for (const auto& s : rep.issues) msg += " [" + s + "]";
            throw invariant_violation(msg);
        }
    }
    validate_strip(cfg);
    int npts = static_cast<int>(cfg.points.size());
    if (static_cast<int>(u_data.size()) != npts || static_cast<int>(v_data.size()) != npts)
        throw shape_mismatch("strip_pairing: one data slot per configured point");

    int n_dom = in.dims[static_cast<std::size_t>(q)];
    int n_cod = in.dims[static_cast<std::size_t>(q + 1)];
    QMat g_dom = in.grams.empty() ? QMat::identity(n_dom)
                                  : in.grams[static_cast<std::size_t>(q)];
    QMat g_cod = in.grams.empty() ? QMat::identity(n_cod)
                                  : in.grams[static_cast<std::size_t>(q + 1)];
    if (!is_positive_definite(g_dom) || !is_positive_definite(g_cod))
        throw singular_input("strip_pairing: gram matrix is not positive definite");

    const QMat& B = in.bP[static_cast<std::size_t>(q)];
    const QMat& L = in.Lambda[static_cast<std::size_t>(q)];
    // Adjoint pencil: A*_q(s) = bP*_q + (s - i(2 gamma - 1)) Lambda*_q, an
    // affine pencil with constant part bP*_q - i(2 gamma - 1) Lambda*_q.
    QMat bstar = gram_adjoint(B, g_dom, g_cod);
    QMat lstar = gram_adjoint(L, g_dom, g_cod);
    QMat bstar_eff = bstar + Scalar(Rat(0), -(Rat(2) * cfg.gamma - Rat(1))) * lstar;

    std::vector<Scalar> stars;
    for (const Scalar& p : cfg.points) stars.push_back(sigma_star(p, cfg.gamma));

    // Validate and transform the per-point data.
    std::vector<std::optional<PrincipalPart>> uhat(static_cast<std::size_t>(npts));
    std::vector<std::optional<PrincipalPart>> vtld(static_cast<std::size_t>(npts));
    for (int a = 0; a < npts; ++a) {
        if (u_data[static_cast<std::size_t>(a)]) {
            const LogSection& u = *u_data[static_cast<std::size_t>(a)];
            u.check();
            if (!(u.exponent == cfg.points[static_cast<std::size_t>(a)]))
                throw center_mismatch("strip_pairing: u-data exponent differs from its point");
            if (u.n != n_dom) throw shape_mismatch("strip_pairing: u-data dimension");
            if (!detail::pencil_apply(B, L, u).is_zero())
                throw invariant_violation("strip_pairing: u-data is not closed");
            uhat[static_cast<std::size_t>(a)] = mellin_singular(u);
        }
        if (v_data[static_cast<std::size_t>(a)]) {
            const LogSection& v = *v_data[static_cast<std::size_t>(a)];
            v.check();
            if (!(v.exponent == stars[static_cast<std::size_t>(a)]))
                throw center_mismatch(
                    "strip_pairing: v-data exponent differs from the reflected point");
            if (v.n != n_cod) throw shape_mismatch("strip_pairing: v-data dimension");
            if (!detail::pencil_apply(bstar_eff, lstar, v).is_zero())
                throw invariant_violation(
                    "strip_pairing: v-data is not closed for the adjoint");
            // Composing with the reflection aligns the second slot at the
            // conjugate of the underlying point: the translation by
            // i(2 gamma - 1) relabels the center from the reflected point to
            // conj(points[b]) without touching coefficients.
            PrincipalPart ph = mellin_singular(v);
            ph.center = cfg.points[static_cast<std::size_t>(a)].conj();
            vtld[static_cast<std::size_t>(a)] = ph;
        }
    }

    StripPairingResult out;
    out.per_point = QMat(npts, npts);
    out.reflected = stars;

    // Row a: everything paired against u-data at points[a]; entries are
    // independent across rows, so rows may be computed concurrently and are
    // assembled by index.
    detail::parallel_for(npts, [&](int a) {
        if (!uhat[static_cast<std::size_t>(a)]) return;
        const Scalar& pa = cfg.points[static_cast<std::size_t>(a)];
        SMat fam = detail::pencil_family(B, L, pa);
        std::vector<Series> fa;
        {
            std::vector<Series> us = uhat[static_cast<std::size_t>(a)]->to_series();
            for (int i = 0; i < n_cod; ++i) {
                Series acc = Series::zero_exact(pa);
                for (int j = 0; j < n_dom; ++j)
                    acc = series_add(acc, series_mul(fam.at(i, j), us[static_cast<std::size_t>(j)]));
                fa.push_back(acc);
            }
        }
        for (int b = 0; b < npts; ++b) {
            if (!vtld[static_cast<std::size_t>(b)]) continue;
            const PrincipalPart& vb = *vtld[static_cast<std::size_t>(b)];
            Scalar entry;
            if (b == a) {
                entry = Scalar::i() * residue_inner(fa, vb.to_series(), g_cod);
            } else {
                // Re-expand the second slot about conj(points[a]), where it
                // is holomorphic; the residue must then vanish identically.
                int order = std::max(1, uhat[static_cast<std::size_t>(a)]->depth);
                std::vector<Series> gb;
                for (int j = 0; j < n_cod; ++j) {
                    Series acc = Series::zero_trunc(pa.conj(), order);
                    for (int d = 1; d <= vb.depth; ++d) {
                        const Scalar& cd = vb.coord(d, j);
                        if (cd.is_zero()) continue;
                        acc = series_add(
                            acc, series_scale(cd, pole_reexpansion(vb.center, d, pa.conj(),
                                                                   order)));
                    }
                    gb.push_back(acc);
                }
                entry = Scalar::i() * residue_inner(fa, gb, g_cod);
                if (!entry.is_zero())
                    throw invariant_violation(
                        "strip_pairing: cross pairing between non-reflected points "
                        "does not vanish");
            }
            out.per_point.at(a, b) = entry;
        }
    });

    out.total = Scalar::zero();
    for (int a = 0; a < npts; ++a) out.total += out.per_point.at(a, a);
    return out;
}

}  // namespace laurel

#pragma once

// Truncated Laurent series at a movable center.
//
// A Series represents a function germ  f(s) = sum_k c_k (s - center)^k  with
// exponents k in [val, ord].  Coefficients at exponents below val are zero;
// coefficients above ord are *unknown* unless `exact` is set, in which case
// the series is a finite Laurent polynomial and everything outside [val, ord]
// is exactly zero.  `ord` is the truncation boundary: every arithmetic
// operation propagates the tightest provable order, and operations that would
// need coefficients beyond it raise insufficient_truncation instead of
// guessing.  A zero series is an empty coefficient list with val == ord + 1,
// which certifies "zero up to ord" (or exactly zero when exact).

#include <climits>
#include <optional>
#include <vector>

#include "scalar.hpp"

namespace laurel {

struct Series {
    Scalar center;
    int val = 1;   // lowest stored exponent; val == ord + 1 iff no coefficients
    int ord = 0;   // highest known exponent
    bool exact = false;
    std::vector<Scalar> c;  // dense coefficients for exponents val..ord

    Series() = default;

    /// Zero up to `order` (truncated zero).
    static Series zero_trunc(const Scalar& center, int order) {
        Series s;
        s.center = center;
        s.ord = order;
        s.val = order + 1;
        return s;
    }

    /// Exactly zero.
    static Series zero_exact(const Scalar& center) {
        Series s;
        s.center = center;
        s.exact = true;
        s.ord = 0;
        s.val = 1;
        return s;
    }

    /// coeff * (s - center)^exp, exactly.
    static Series monomial(const Scalar& center, const Scalar& coeff, int exp) {
        if (coeff.is_zero()) return zero_exact(center);
        Series s;
        s.center = center;
        s.val = exp;
        s.ord = exp;
        s.exact = true;
        s.c = {coeff};
        return s;
    }

    /// Exact polynomial from Taylor coefficients (exponents 0, 1, ...).
    static Series poly(const Scalar& center, std::vector<Scalar> coeffs) {
        Series s;
        s.center = center;
        s.val = 0;
        s.ord = static_cast<int>(coeffs.size()) - 1;
        s.exact = true;
        s.c = std::move(coeffs);
        if (s.c.empty()) return zero_exact(center);
        s.normalize();
        return s;
    }

    /// General constructor: dense coefficients for exponents val..val+n-1,
    /// known through `order` (which must be >= val + n - 1).
    static Series make(const Scalar& center, int val, std::vector<Scalar> coeffs, int order,
                       bool exact) {
        int top = val + static_cast<int>(coeffs.size()) - 1;
        if (order < top) throw invariant_violation("series order below stored coefficients");
        Series s;
        s.center = center;
        s.val = val;
        s.c = std::move(coeffs);
        if (exact) {
            s.ord = top;
            s.exact = true;
        } else {
            // pad the known range densely with zeros
            s.c.resize(static_cast<std::size_t>(order - val + 1));
            s.ord = order;
        }
        s.normalize();
        return s;
    }

    bool is_zero_known() const { return c.empty(); }
    bool is_exactly_zero() const { return exact && c.empty(); }

    /// Highest exponent with a known coefficient; INT_MAX when exact.
    int known_upto() const { return exact ? INT_MAX : ord; }

    /// Coefficient at exponent k.  Throws when k is beyond the truncation
    /// boundary of a non-exact series.
    Scalar coeff(int k) const {
        if (k > ord && !exact)
            throw insufficient_truncation("coefficient at exponent beyond truncation");
        if (k < val || k > ord) return Scalar::zero();
        return c[static_cast<std::size_t>(k - val)];
    }

    void normalize() {
        std::size_t lead = 0;
        while (lead < c.size() && c[lead].is_zero()) ++lead;
        if (lead > 0) {
            c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(lead));
            val += static_cast<int>(lead);
        }
        if (exact) {
            while (!c.empty() && c.back().is_zero()) c.pop_back();
            ord = val + static_cast<int>(c.size()) - 1;
        }
        if (c.empty()) {
            if (exact) {
                val = 1;
                ord = 0;
            } else {
                val = ord + 1;
            }
        }
    }

    Series operator-() const {
        Series s = *this;
        for (auto& x : s.c) x = -x;
        return s;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.center == b.center && a.val == b.val && a.ord == b.ord && a.exact == b.exact &&
               a.c == b.c;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }
};

namespace detail {
inline void require_same_center(const Series& a, const Series& b, const char* what) {
    if (a.center != b.center)
        throw center_mismatch(std::string(what) + " on series with different centers");
}
}  // namespace detail

inline Series series_add(const Series& a, const Series& b) {
    detail::require_same_center(a, b, "add");
    Series s;
    s.center = a.center;
    s.exact = a.exact && b.exact;
    int lo, hi;
    if (s.exact) {
        if (a.c.empty()) return b;
        if (b.c.empty()) return a;
        lo = std::min(a.val, b.val);
        hi = std::max(a.ord, b.ord);
    } else {
        hi = std::min(a.known_upto(), b.known_upto());
        lo = std::min(a.c.empty() ? hi + 1 : a.val, b.c.empty() ? hi + 1 : b.val);
        if (lo > hi) return Series::zero_trunc(a.center, hi);
    }
    s.val = lo;
    s.ord = hi;
    s.c.assign(static_cast<std::size_t>(hi - lo + 1), Scalar::zero());
    for (int k = lo; k <= hi; ++k) {
        Scalar x = (k >= a.val && k <= a.ord) ? a.c[static_cast<std::size_t>(k - a.val)]
                                              : Scalar::zero();
        Scalar y = (k >= b.val && k <= b.ord) ? b.c[static_cast<std::size_t>(k - b.val)]
                                              : Scalar::zero();
        s.c[static_cast<std::size_t>(k - lo)] = x + y;
    }
    s.normalize();
    return s;
}

inline Series series_sub(const Series& a, const Series& b) { return series_add(a, -b); }

inline Series series_mul(const Series& a, const Series& b) {
    detail::require_same_center(a, b, "mul");
    if (a.is_exactly_zero() || b.is_exactly_zero()) return Series::zero_exact(a.center);
    Series s;
    s.center = a.center;
    if (a.exact && b.exact) {
        if (a.c.empty() || b.c.empty()) throw invariant_violation("unnormalized exact zero");
        s.exact = true;
        s.val = a.val + b.val;
        s.ord = a.ord + b.ord;
    } else {
        // The product coefficient at exponent e needs a_j b_k for all
        // j + k = e with j >= a.val, k >= b.val; it is provable exactly when
        // e <= a.ord + b.val (if a is truncated) and e <= b.ord + a.val (if b
        // is truncated).  Empty truncated factors enter with val = ord + 1.
        long hi = LONG_MAX;
        int aval = a.c.empty() ? a.ord + 1 : a.val;
        int bval = b.c.empty() ? b.ord + 1 : b.val;
        if (!a.exact) hi = std::min(hi, static_cast<long>(a.ord) + bval);
        if (!b.exact) hi = std::min(hi, static_cast<long>(b.ord) + aval);
        if (a.c.empty() || b.c.empty()) return Series::zero_trunc(a.center, static_cast<int>(hi));
        s.val = a.val + b.val;
        s.ord = static_cast<int>(hi);
        if (s.val > s.ord) return Series::zero_trunc(a.center, s.ord);
    }
    s.c.assign(static_cast<std::size_t>(s.ord - s.val + 1), Scalar::zero());
    for (std::size_t j = 0; j < a.c.size(); ++j) {
        if (a.c[j].is_zero()) continue;
        int ea = a.val + static_cast<int>(j);
        for (std::size_t k = 0; k < b.c.size(); ++k) {
            int e = ea + b.val + static_cast<int>(k);
            if (e > s.ord) break;
            if (!b.c[k].is_zero()) s.c[static_cast<std::size_t>(e - s.val)] += a.c[j] * b.c[k];
        }
    }
    s.normalize();
    return s;
}

inline Series series_scale(const Scalar& x, const Series& a) {
    if (x.is_zero()) return a.exact ? Series::zero_exact(a.center) : Series::zero_trunc(a.center, a.ord);
    Series s = a;
    for (auto& v : s.c) v *= x;
    return s;
}

/// Multiply by (s - center)^k, shifting all exponents by k.
inline Series shift_exponents(const Series& a, int k) {
    Series s = a;
    s.val += k;
    s.ord += k;
    return s;
}

inline Series truncate_to(const Series& a, int order);

/// Multiplicative inverse.  The result has valuation -a.val and is computed
/// by the Neumann sum against the leading term: with a = u x^v (1 + r),
/// 1/a = x^{-v} u^{-1} sum_k (-r)^k.  `req_ord` selects the output order; it
/// defaults to the tightest provable order a.ord - 2 a.val and may not exceed
/// it for truncated input.  Exact monomials invert exactly.
inline Series series_invert(const Series& a, std::optional<int> req_ord = std::nullopt) {
    if (a.is_exactly_zero()) throw singular_input("inverting the zero series");
    if (a.c.empty())
        throw insufficient_truncation("inverting a series that is zero up to its order");
    int v = a.val;
    int provable = a.ord - 2 * v;
    int target = req_ord.value_or(a.exact ? (a.c.size() == 1 ? -v : provable) : provable);
    if (!a.exact && target > provable)
        throw insufficient_truncation("requested inverse order beyond provable bound");
    if (target < -v) throw invariant_violation("inverse order below leading exponent");

    Scalar u_inv = Scalar::one() / a.c.front();
    if (a.c.size() == 1 && a.exact) return Series::monomial(a.center, u_inv, -v);

    // Work in the unit part: r = a * x^{-v} * u^{-1} - 1 has valuation >= 1
    // and the Neumann window [0, target + v] maps to [-v, target] after the
    // final exponent shift.
    int window = target + v;
    Series r = series_scale(u_inv, shift_exponents(a, -v));
    r = series_sub(r, Series::monomial(a.center, Scalar::one(), 0));
    r = truncate_to(r, window);
    Series acc = Series::make(a.center, 0, {Scalar::one()}, window, false);
    Series term = acc;
    for (int k = 1; k <= window; ++k) {
        term = truncate_to(series_mul(term, -r), window);
        if (term.is_zero_known()) break;
        acc = series_add(acc, term);
    }
    acc = series_scale(u_inv, shift_exponents(acc, -v));
    acc.normalize();
    return acc;
}

/// Singular part: the sum of the terms with negative exponents.  The result
/// is an exact Laurent polynomial; it requires the input's negative range to
/// be fully known (ord >= -1 or exact).
inline Series singular_part(const Series& a) {
    if (!a.exact && a.ord < -1)
        throw insufficient_truncation("singular part needs coefficients up to exponent -1");
    Series s;
    s.center = a.center;
    s.exact = true;
    if (a.val >= 0 || a.c.empty()) return Series::zero_exact(a.center);
    int hi = std::min(a.ord, -1);
    s.val = a.val;
    s.ord = hi;
    s.c.assign(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(hi - a.val + 1));
    s.normalize();
    if (s.c.empty()) return Series::zero_exact(a.center);
    return s;
}

/// True when the singular part is certifiably zero.
inline bool singular_is_zero(const Series& a) { return singular_part(a).is_exactly_zero(); }

/// (tau_theta a)(s) = a(s + theta).  A pure coordinate shift: the coefficient
/// list is unchanged and the center moves to center - theta.  Truncated
/// non-polynomial series are rejected for theta != 0 by contract.
inline Series translate(const Series& a, const Scalar& theta) {
    if (theta.is_zero()) return a;
    if (!a.exact)
        throw insufficient_truncation("translate of a truncated non-polynomial series");
    Series s = a;
    s.center = a.center - theta;
    return s;
}

/// conj_flip(a)(s) = conj(a(conj s)): conjugate coefficients at the
/// conjugated center.  An involution.
inline Series conj_flip(const Series& a) {
    Series s = a;
    s.center = a.center.conj();
    for (auto& x : s.c) x = x.conj();
    return s;
}

/// Derivative d/ds.  Knowledge shrinks by one order for truncated input.
inline Series derivative(const Series& a) {
    Series s;
    s.center = a.center;
    s.exact = a.exact;
    if (a.c.empty()) return a.exact ? Series::zero_exact(a.center)
                                    : Series::zero_trunc(a.center, a.ord - 1);
    s.val = a.val - 1;
    s.ord = a.ord - 1;
    // exponent k maps to k-1; the k = 0 term disappears, which may leave a gap
    // only at the front, handled by rebuilding densely.
    s.c.assign(static_cast<std::size_t>(std::max(0, s.ord - s.val + 1)), Scalar::zero());
    for (std::size_t j = 0; j < a.c.size(); ++j) {
        int k = a.val + static_cast<int>(j);
        if (k == 0 || k - 1 > s.ord) continue;
        s.c[static_cast<std::size_t>(k - 1 - s.val)] = Scalar(Rat(k)) * a.c[j];
    }
    if (s.val > s.ord) return a.exact ? Series::zero_exact(a.center)
                                      : Series::zero_trunc(a.center, s.ord);
    s.normalize();
    return s;
}

/// Re-expand an exact polynomial (valuation >= 0) around a new center.
inline Series recenter(const Series& a, const Scalar& new_center) {
    if (!a.exact || (a.val < 0 && !a.c.empty()))
        throw insufficient_truncation("recenter needs an exact polynomial");
    if (a.center == new_center) return a;
    Scalar d = new_center - a.center;
    if (a.c.empty()) return Series::zero_exact(new_center);
    int deg = a.ord;
    std::vector<Scalar> out(static_cast<std::size_t>(deg + 1), Scalar::zero());
    // f(s) = sum_k a_k ((s - c1) + d)^k
    for (int k = a.val; k <= a.ord; ++k) {
        const Scalar& ak = a.c[static_cast<std::size_t>(k - a.val)];
        if (ak.is_zero()) continue;
        // walk j = k, k-1, ..., 0 maintaining C(k,j) and d^{k-j}
        Scalar dp = Scalar::one();
        Scalar ckj = Scalar::one();
        for (int j = k; j >= 0; --j) {
            out[static_cast<std::size_t>(j)] += ak * ckj * dp;
            if (j > 0) {
                ckj *= Scalar(Rat(j)) / Scalar(Rat(k - j + 1));
                dp *= d;
            }
        }
    }
    return Series::poly(new_center, std::move(out));
}

/// Truncate knowledge to `order` (result is non-exact).  For exact input any
/// order is allowed; for truncated input it cannot exceed the current order.
inline Series truncate_to(const Series& a, int order) {
    if (!a.exact && order > a.ord)
        throw insufficient_truncation("cannot extend knowledge by truncation");
    Series s;
    s.center = a.center;
    s.exact = false;
    s.ord = order;
    if (a.c.empty() || a.val > order) {
        s.val = order + 1;
        return s;
    }
    s.val = a.val;
    int hi = std::min(a.ord, order);
    s.c.assign(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(hi - a.val + 1));
    s.c.resize(static_cast<std::size_t>(order - s.val + 1), Scalar::zero());
    s.normalize();
    return s;
}

/// Expansion of (s - pole)^{-m} around `center` != pole, truncated at `order`:
/// (-1)^m sum_j C(m-1+j, j) d^{-m-j} (s - center)^j  with d = pole - center.
inline Series pole_reexpansion(const Scalar& pole, int m, const Scalar& center, int order) {
    if (m <= 0) throw invariant_violation("pole_reexpansion needs m >= 1");
    Scalar d = pole - center;
    if (d.is_zero()) throw singular_input("pole_reexpansion at the pole itself");
    std::vector<Scalar> cs;
    Scalar dinv = Scalar::one() / d;
    Scalar coef = pow_int(Scalar(-1), m) * pow_int(dinv, m);
    Scalar binom = Scalar::one();  // C(m-1+j, j)
    for (int j = 0; j <= order; ++j) {
        cs.push_back(coef * binom);
        coef *= dinv;
        binom *= Scalar(Rat(m + j)) / Scalar(Rat(j + 1));
    }
    return Series::make(center, 0, std::move(cs), order, false);
}

/// Exact Lagrange interpolation: the unique polynomial of degree < n through
/// (xs[j], ys[j]), expressed in the local coordinate t = s - center (the xs
/// are t-values).  Points must be distinct.
inline Series interpolate(const std::vector<Scalar>& xs, const std::vector<Scalar>& ys,
                          const Scalar& center) {
    if (xs.size() != ys.size()) throw shape_mismatch("interpolate: point/value count mismatch");
    std::size_t n = xs.size();
    if (n == 0) return Series::zero_exact(center);
    // master polynomial M(t) = prod (t - x_l)
    std::vector<Scalar> master = {Scalar::one()};
    for (std::size_t l = 0; l < n; ++l) {
        std::vector<Scalar> next(master.size() + 1, Scalar::zero());
        for (std::size_t j = 0; j < master.size(); ++j) {
            next[j + 1] += master[j];
            next[j] -= xs[l] * master[j];
        }
        master = std::move(next);
    }
    std::vector<Scalar> acc(n, Scalar::zero());
    for (std::size_t j = 0; j < n; ++j) {
        // Q_j = M / (t - x_j) by synthetic division, then weight by
        // y_j / Q_j(x_j).
        std::vector<Scalar> q(n, Scalar::zero());
        Scalar carry = master[n];  // leading coefficient 1
        for (std::size_t k = n; k-- > 0;) {
            q[k] = carry;
            carry = master[k] + xs[j] * carry;
        }
        Scalar denom = Scalar::zero();
        Scalar xp = Scalar::one();
        for (std::size_t k = 0; k < n; ++k) {
            denom += q[k] * xp;
            xp *= xs[j];
        }
        if (denom.is_zero()) throw singular_input("interpolate: repeated points");
        Scalar w = ys[j] / denom;
        for (std::size_t k = 0; k < n; ++k) acc[k] += w * q[k];
    }
    return Series::poly(center, std::move(acc));
}

inline Scalar evaluate_at_center(const Series& a) { return a.coeff(0); }

/// Exact evaluation of an exact Laurent polynomial at a point (for the
/// polynomial part; negative exponents need point != center).
inline Scalar evaluate(const Series& a, const Scalar& point) {
    if (!a.exact) throw insufficient_truncation("evaluate needs an exact series");
    Scalar t = point - a.center;
    Scalar acc = Scalar::zero();
    for (int k = a.val; k <= a.ord; ++k)
        acc += a.c[static_cast<std::size_t>(k - a.val)] * pow_int(t, k);
    return acc;
}

}  // namespace laurel

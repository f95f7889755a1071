#pragma once

// Exact dense polynomials over Q(i), square-free decomposition, and complete
// extraction of Q(i)-linear factors.  Root candidates come from the
// rational-root theorem over the Gaussian integers, so the machinery includes
// exact integer factorization (trial division, Miller-Rabin, Brent's rho) and
// Gaussian prime splitting.  Factors with no Q(i) root are returned intact,
// never approximated.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace laurel {

using Int = boost::multiprecision::cpp_int;

/// Deterministic total order on exact scalars (real part, then imaginary).
inline bool scalar_less(const Scalar& a, const Scalar& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
}

// ---------------------------------------------------------------------------
// Dense polynomials over Q(i)
// ---------------------------------------------------------------------------

/// Coefficients ascending in the variable, no trailing zeros; empty = zero.
struct QiPoly {
    std::vector<Scalar> c;

    static QiPoly zero() { return QiPoly{}; }
    static QiPoly constant(const Scalar& v) {
        QiPoly p;
        if (!v.is_zero()) p.c = {v};
        return p;
    }
    static QiPoly from_coeffs(std::vector<Scalar> cs) {
        QiPoly p;
        p.c = std::move(cs);
        p.normalize();
        return p;
    }
    /// x - root
    static QiPoly linear(const Scalar& root) {
        QiPoly p;
        p.c = {-root, Scalar::one()};
        return p;
    }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    Scalar lc() const { return c.empty() ? Scalar::zero() : c.back(); }
    Scalar coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c.size())) ? c[static_cast<std::size_t>(k)]
                                                          : Scalar::zero();
    }
    Scalar eval(const Scalar& x) const {
        Scalar acc = Scalar::zero();
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }
};

inline QiPoly poly_add(const QiPoly& a, const QiPoly& b) {
    std::vector<Scalar> out(std::max(a.c.size(), b.c.size()), Scalar::zero());
    for (std::size_t k = 0; k < a.c.size(); ++k) out[k] += a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) out[k] += b.c[k];
    return QiPoly::from_coeffs(std::move(out));
}

inline QiPoly poly_scale(const Scalar& s, const QiPoly& a) {
    if (s.is_zero()) return QiPoly::zero();
    QiPoly out = a;
    for (auto& v : out.c) v *= s;
    return out;
}

inline QiPoly poly_sub(const QiPoly& a, const QiPoly& b) {
    return poly_add(a, poly_scale(-Scalar::one(), b));
}

inline QiPoly poly_mul(const QiPoly& a, const QiPoly& b) {
    if (a.is_zero() || b.is_zero()) return QiPoly::zero();
    std::vector<Scalar> out(a.c.size() + b.c.size() - 1, Scalar::zero());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return QiPoly::from_coeffs(std::move(out));
}

/// Euclidean division: a = q b + r with deg r < deg b.
inline std::pair<QiPoly, QiPoly> poly_divmod(const QiPoly& a, const QiPoly& b) {
    if (b.is_zero()) throw singular_input("polynomial division by zero");
    QiPoly r = a;
    std::vector<Scalar> q(a.c.size() > b.c.size() ? a.c.size() - b.c.size() + 1 : 1,
                          Scalar::zero());
    Scalar linv = Scalar::one() / b.lc();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        Scalar t = r.lc() * linv;
        q[static_cast<std::size_t>(shift)] += t;
        for (int k = 0; k <= b.degree(); ++k)
            r.c[static_cast<std::size_t>(k + shift)] -= t * b.c[static_cast<std::size_t>(k)];
        r.normalize();
    }
    return {QiPoly::from_coeffs(std::move(q)), r};
}

inline QiPoly poly_div_exact(const QiPoly& a, const QiPoly& b) {
    auto [q, r] = poly_divmod(a, b);
    if (!r.is_zero()) throw invariant_violation("polynomial division expected to be exact");
    return q;
}

inline QiPoly poly_monic(const QiPoly& a) {
    if (a.is_zero()) return a;
    return poly_scale(Scalar::one() / a.lc(), a);
}

/// Monic greatest common divisor; gcd(0, b) = monic b.
inline QiPoly poly_gcd(QiPoly a, QiPoly b) {
    while (!b.is_zero()) {
        QiPoly r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

inline QiPoly poly_derivative(const QiPoly& a) {
    std::vector<Scalar> out;
    for (std::size_t k = 1; k < a.c.size(); ++k)
        out.push_back(Scalar(Rat(static_cast<long>(k))) * a.c[k]);
    return QiPoly::from_coeffs(std::move(out));
}

/// Printable form with exact coefficient strings, ascending powers of `var`.
inline std::string to_string(const QiPoly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = 0; k < p.c.size(); ++k) {
        if (p.c[k].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(p.c[k]) + ")";
        if (k == 1) out += "*" + var;
        if (k > 1) out += "*" + var + "^" + std::to_string(k);
    }
    return out;
}

/// Square-free decomposition (Musser): p = lc * prod f_i ^ m_i with the f_i
/// monic, square-free, pairwise coprime, and the m_i strictly increasing.
inline std::vector<std::pair<QiPoly, int>> squarefree_decomposition(const QiPoly& p) {
    if (p.is_zero()) throw singular_input("square-free decomposition of zero");
    std::vector<std::pair<QiPoly, int>> out;
    if (p.degree() == 0) return out;
    QiPoly c = poly_gcd(p, poly_derivative(p));
    QiPoly w = poly_div_exact(poly_monic(p), c);
    for (int i = 1; w.degree() > 0; ++i) {
        QiPoly y = poly_gcd(w, c);
        QiPoly f = poly_div_exact(w, y);
        if (f.degree() > 0) out.emplace_back(poly_monic(f), i);
        w = std::move(y);
        c = poly_div_exact(c, w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Integer factorization
// ---------------------------------------------------------------------------

namespace detail {

inline Int powmod(Int base, Int exp, const Int& mod) {
    Int acc = 1;
    base %= mod;
    while (exp > 0) {
        if ((exp & 1) != 0) acc = acc * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return acc;
}

/// Deterministic for n < 3.3e24 with this witness set; overwhelming beyond.
inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Brent's cycle variant of Pollard's rho; n odd composite, not a prime power
/// obstruction here (any nontrivial factor accepted).
inline Int pollard_brent(const Int& n) {
    if (n % 2 == 0) return 2;
    for (Int cadd = 1;; ++cadd) {
        Int y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const Int m = 128;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + cadd) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = r - k;
                if (lim > m) lim = m;
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + cadd) % n;
                    Int diff = x > y ? x - y : y - x;
                    if (diff == 0) diff = 1;
                    q = q * diff % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + cadd) % n;
                Int diff = x > ys ? x - ys : ys - x;
                if (diff == 0) break;
                g = gcd(diff, n);
            }
        }
        if (g > 1 && g < n) return g;
    }
}

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 (empty for 1).
inline std::map<Int, int> factor_int(Int n) {
    if (n < 1) throw singular_input("factor_int needs n >= 1");
    std::map<Int, int> out;
    for (int p : {2, 3, 5, 7, 11, 13}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    for (Int p = 17; p * p <= n && p < 100000; p += 2) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    detail::factor_into(n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Gaussian integers
// ---------------------------------------------------------------------------

struct GInt {
    Int re, im;

    GInt() : re(0), im(0) {}
    GInt(Int r, Int i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GInt conj() const { return GInt(re, -im); }
    Int norm() const { return re * re + im * im; }

    friend GInt operator+(const GInt& a, const GInt& b) { return GInt(a.re + b.re, a.im + b.im); }
    friend GInt operator-(const GInt& a, const GInt& b) { return GInt(a.re - b.re, a.im - b.im); }
    friend GInt operator*(const GInt& a, const GInt& b) {
        return GInt(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend bool operator==(const GInt& a, const GInt& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator<(const GInt& a, const GInt& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

namespace detail {

inline Int round_div(const Int& a, const Int& b) {
    // nearest integer to a/b, b > 0
    Int twice = 2 * a + b;
    Int q = twice / (2 * b);
    if (twice < 0 && twice % (2 * b) != 0) --q;  // floor for negatives
    return q;
}

}  // namespace detail

/// Rounded quotient: remainder a - q b has norm < norm(b).
inline GInt gdiv_round(const GInt& a, const GInt& b) {
    if (b.is_zero()) throw singular_input("gaussian division by zero");
    GInt num = a * b.conj();
    Int n = b.norm();
    return GInt(detail::round_div(num.re, n), detail::round_div(num.im, n));
}

inline GInt gmod(const GInt& a, const GInt& b) { return a - gdiv_round(a, b) * b; }

inline GInt ggcd(GInt a, GInt b) {
    while (!b.is_zero()) {
        GInt r = gmod(a, b);
        a = b;
        b = r;
    }
    return a;
}

/// The unique associate with re > 0, im >= 0 (zero stays zero).
inline GInt canonical_associate(GInt g) {
    if (g.is_zero()) return g;
    for (int k = 0; k < 3 && !(g.re > 0 && g.im >= 0); ++k)
        g = g * GInt(0, 1);
    if (!(g.re > 0 && g.im >= 0)) throw invariant_violation("no canonical associate");
    return g;
}

inline bool gdivides(const GInt& d, const GInt& a) { return gmod(a, d).is_zero(); }

/// Prime factorization in Z[i] up to units: canonical primes with exponents,
/// sorted.  g must be nonzero.
inline std::vector<std::pair<GInt, int>> factor_gaussian(const GInt& g0) {
    if (g0.is_zero()) throw singular_input("gaussian factorization of zero");
    std::map<GInt, int> acc;
    GInt g = g0;
    auto strip = [&](const GInt& pi) {
        GInt p = canonical_associate(pi);
        while (gdivides(p, g)) {
            g = gdiv_round(g, p) /* exact */;
            ++acc[p];
        }
    };
    std::map<Int, int> nf = factor_int(g0.norm());
    for (const auto& [p, e] : nf) {
        (void)e;
        if (p == 2) {
            strip(GInt(1, 1));
        } else if (p % 4 == 3) {
            strip(GInt(p, 0));
        } else {
            // split p = pi * conj(pi): x with x^2 = -1 mod p via a
            // quadratic non-residue
            Int x = 0;
            for (Int a = 2;; ++a) {
                Int cand = detail::powmod(a, (p - 1) / 4, p);
                if (cand * cand % p == p - 1) {
                    x = cand;
                    break;
                }
            }
            GInt pi = ggcd(GInt(p, 0), GInt(x, 1));
            strip(pi);
            strip(pi.conj());
        }
    }
    if (g.norm() != 1) throw invariant_violation("gaussian factorization incomplete");
    return {acc.begin(), acc.end()};
}

/// All divisors of g up to units, one canonical associate each (includes 1).
inline std::vector<GInt> divisors_gaussian(const GInt& g) {
    std::vector<GInt> out = {GInt(1, 0)};
    for (const auto& [p, e] : factor_gaussian(g)) {
        std::vector<GInt> next;
        for (const GInt& d : out) {
            GInt pw(1, 0);
            for (int k = 0; k <= e; ++k) {
                next.push_back(canonical_associate(d * pw));
                pw = pw * p;
            }
        }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Q(i)-linear-factor extraction
// ---------------------------------------------------------------------------

struct RootExtraction {
    std::vector<std::pair<Scalar, int>> roots;        // distinct, with multiplicity
    std::vector<std::pair<QiPoly, int>> unresolved;   // rootless monic square-free factors
};

namespace detail {

inline Scalar gint_to_scalar(const GInt& g) { return Scalar(Rat(g.re), Rat(g.im)); }

/// All Q(i) roots of a square-free polynomial (degree >= 1), by the
/// rational-root theorem over Z[i].
inline std::vector<Scalar> squarefree_roots(const QiPoly& f0) {
    std::vector<Scalar> roots;
    QiPoly f = f0;
    // factor out the root at the origin
    std::size_t k0 = 0;
    while (k0 < f.c.size() && f.c[k0].is_zero()) ++k0;
    if (k0 > 0) {
        roots.push_back(Scalar::zero());
        f.c.erase(f.c.begin(), f.c.begin() + static_cast<std::ptrdiff_t>(k0));
    }
    if (f.degree() < 1) return roots;
    // clear denominators to Z[i] coefficients
    Int den = 1;
    for (const Scalar& v : f.c) {
        den = lcm(den, Int(denominator(v.re)));
        den = lcm(den, Int(denominator(v.im)));
    }
    std::vector<GInt> ic;
    for (const Scalar& v : f.c) {
        Rat r = v.re * Rat(den), i = v.im * Rat(den);
        ic.emplace_back(Int(numerator(r)), Int(numerator(i)));
    }
    // primitive part
    GInt content = ic[0];
    for (std::size_t k = 1; k < ic.size(); ++k) content = ggcd(content, ic[k]);
    for (auto& v : ic) v = gdiv_round(v, content);
    const GInt unit[4] = {GInt(1, 0), GInt(0, 1), GInt(-1, 0), GInt(0, -1)};
    std::vector<Scalar> candidates;
    for (const GInt& r : divisors_gaussian(ic.front()))
        for (const GInt& s : divisors_gaussian(ic.back()))
            for (const GInt& u : unit)
                candidates.push_back(gint_to_scalar(u * r) / gint_to_scalar(s));
    std::sort(candidates.begin(), candidates.end(), scalar_less);
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const Scalar& z : candidates)
        if (f.eval(z).is_zero()) roots.push_back(z);
    std::sort(roots.begin(), roots.end(), scalar_less);
    return roots;
}

}  // namespace detail

/// Split p into Q(i)-linear factors and rootless remainder factors:
/// p = lc * prod (x - root)^mult * prod unresolved^mult.
inline RootExtraction qi_roots(const QiPoly& p) {
    if (p.is_zero()) throw singular_input("root extraction from the zero polynomial");
    RootExtraction out;
    for (const auto& [f, m] : squarefree_decomposition(p)) {
        QiPoly rem = f;
        for (const Scalar& z : detail::squarefree_roots(f)) {
            out.roots.emplace_back(z, m);
            rem = poly_div_exact(rem, QiPoly::linear(z));
        }
        if (rem.degree() >= 1) out.unresolved.emplace_back(poly_monic(rem), m);
    }
    std::sort(out.roots.begin(), out.roots.end(),
              [](const auto& a, const auto& b) { return scalar_less(a.first, b.first); });
    return out;
}

}  // namespace laurel

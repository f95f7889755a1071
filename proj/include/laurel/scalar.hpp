#pragma once

// Exact scalar arithmetic over the Gaussian rationals Q(i).
//
// Every quantity in this library is either a Rat (arbitrary-precision
// rational) or a Scalar (pair of Rats representing re + im*i).  There is
// no floating point anywhere: equality tests are decidable and all
// algorithms that report "zero" mean exactly zero.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace laurel {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Error taxonomy.  All library failures derive from laurel::error so
/// callers can distinguish mathematical certification failures from
/// programming mistakes (which use assertions / logic_error).
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : error {
    explicit parse_error(const std::string& msg) : error("parse: " + msg) {}
};

struct center_mismatch : error {
    explicit center_mismatch(const std::string& msg) : error("center mismatch: " + msg) {}
};

struct shape_mismatch : error {
    explicit shape_mismatch(const std::string& msg) : error("shape mismatch: " + msg) {}
};

struct insufficient_truncation : error {
    explicit insufficient_truncation(const std::string& msg)
        : error("insufficient truncation: " + msg) {}
};

struct singular_input : error {
    explicit singular_input(const std::string& msg) : error("singular input: " + msg) {}
};

struct invariant_violation : error {
    explicit invariant_violation(const std::string& msg) : error("invariant violation: " + msg) {}
};

/// A Gaussian rational re + im*i.
struct Scalar {
    Rat re;
    Rat im;

    Scalar() = default;
    Scalar(long r) : re(r) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    /// Squared modulus re^2 + im^2; rational and nonnegative.
    Rat norm2() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Scalar& operator/=(const Scalar& o) {
        if (o.is_zero()) throw singular_input("scalar division by zero");
        Rat n = o.norm2();
        Rat r = (re * o.re + im * o.im) / n;
        im = (im * o.re - re * o.im) / n;
        re = std::move(r);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Lexicographic order on (re, im); used only for deterministic sorting,
    /// it is not compatible with the arithmetic.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

inline Scalar conj(const Scalar& s) { return s.conj(); }

/// Integer power with exact arithmetic; k may be negative for nonzero base.
inline Scalar pow_int(const Scalar& base, long k) {
    if (k < 0) {
        if (base.is_zero()) throw singular_input("pow_int: zero base with negative exponent");
        return Scalar::one() / pow_int(base, -k);
    }
    Scalar acc = Scalar::one();
    Scalar b = base;
    unsigned long e = static_cast<unsigned long>(k);
    while (e) {
        if (e & 1UL) acc *= b;
        b *= b;
        e >>= 1UL;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Canonical text form.
//
// A rational prints as "p" or "p/q" with q > 1 and gcd(p, q) = 1.  A scalar
// prints as one of "0", "<re>", "<im>*i", "<re>+<im>*i", "<re>-<abs im>*i".
// The printer is the inverse of the parser on its image, so serialized
// reports are byte-deterministic.
// ---------------------------------------------------------------------------

inline std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string to_string(const Scalar& s) {
    if (s.is_zero()) return "0";
    if (s.im == 0) return to_string(s.re);
    std::string imabs = to_string(s.im < 0 ? Rat(-s.im) : s.im) + "*i";
    if (s.re == 0) return (s.im < 0 ? "-" : "") + imabs;
    return to_string(s.re) + (s.im < 0 ? "-" : "+") + imabs;
}

namespace detail {

inline bool parse_rat_token(const std::string& tok, Rat& out) {
    if (tok.empty()) return false;
    std::size_t pos = 0;
    bool neg = false;
    if (tok[pos] == '+' || tok[pos] == '-') {
        neg = tok[pos] == '-';
        ++pos;
    }
    std::size_t num_start = pos;
    while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
    if (pos == num_start) return false;
    BigInt num(tok.substr(num_start, pos - num_start));
    BigInt den = 1;
    if (pos < tok.size()) {
        if (tok[pos] != '/') return false;
        ++pos;
        std::size_t den_start = pos;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos == den_start || pos != tok.size()) return false;
        den = BigInt(tok.substr(den_start));
        if (den == 0) return false;
    }
    out = Rat(num, den);
    if (neg) out = -out;
    return true;
}

}  // namespace detail

/// Parse the canonical scalar form.  Accepted grammar, with R a signed
/// rational "[+-]?d+(/d+)?":  R | R*i | i | -i | R[+-]R*i | R[+-]i.
inline Scalar parse_scalar(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw parse_error("empty scalar");

    auto parse_imag_token = [](std::string tok, Rat& out) -> bool {
        // tok is everything up to and including a trailing "i".
        if (tok.empty() || tok.back() != 'i') return false;
        tok.pop_back();
        if (!tok.empty() && tok.back() == '*') tok.pop_back();
        if (tok.empty() || tok == "+") {
            out = 1;
            return true;
        }
        if (tok == "-") {
            out = -1;
            return true;
        }
        return detail::parse_rat_token(tok, out);
    };

    if (s.back() == 'i') {
        // Either pure imaginary or re +/- im*i.  Find the sign that splits the
        // real part from the imaginary part: the last '+' or '-' that is not
        // the leading sign and not immediately after '/'.
        std::size_t split = std::string::npos;
        for (std::size_t k = s.size() - 1; k > 0; --k) {
            if (s[k] == '+' || s[k] == '-') {
                split = k;
                break;
            }
        }
        Rat imv;
        if (split == std::string::npos || split == 0) {
            if (!parse_imag_token(s, imv)) throw parse_error("bad scalar '" + text + "'");
            return Scalar(Rat(0), imv);
        }
        Rat rev;
        if (!detail::parse_rat_token(s.substr(0, split), rev))
            throw parse_error("bad scalar '" + text + "'");
        if (!parse_imag_token(s.substr(split), imv))
            throw parse_error("bad scalar '" + text + "'");
        return Scalar(rev, imv);
    }
    Rat rev;
    if (!detail::parse_rat_token(s, rev)) throw parse_error("bad scalar '" + text + "'");
    return Scalar(rev);
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

}  // namespace laurel

#pragma once

// Holomorphic families of linear maps: matrices whose entries are Series at a
// shared center.  Provides the adjoint family against prescribed inner
// products, exact local inversion, and the local diagonal (Smith-type) normal
// form over the ring of germs, with certified monomial exponents.

#include <vector>

#include "linalg.hpp"
#include "series.hpp"

namespace laurel {

struct SMat {
    int rows = 0, cols = 0;
    Scalar center;
    std::vector<Series> a;

    SMat() = default;
    SMat(int r, int c, const Scalar& center_, bool exact_zero = true)
        : rows(r), cols(c), center(center_) {
        a.assign(static_cast<std::size_t>(r) * static_cast<std::size_t>(c),
                 exact_zero ? Series::zero_exact(center_) : Series::zero_trunc(center_, 0));
    }

    Series& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Series& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static SMat identity(int n, const Scalar& center) {
        SMat m(n, n, center);
        for (int i = 0; i < n; ++i) m.at(i, i) = Series::monomial(center, Scalar::one(), 0);
        return m;
    }

    /// Constant family from an exact matrix.
    static SMat constant(const QMat& q, const Scalar& center) {
        SMat m(q.rows, q.cols, center);
        for (int i = 0; i < q.rows; ++i)
            for (int j = 0; j < q.cols; ++j)
                m.at(i, j) = Series::monomial(center, q.at(i, j), 0);
        return m;
    }

    /// Matrix of coefficients at exponent k (throws if any entry is unknown
    /// there).
    QMat coeff_matrix(int k) const {
        QMat q(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) q.at(i, j) = at(i, j).coeff(k);
        return q;
    }

    QMat value_at_center() const { return coeff_matrix(0); }

    bool all_exact() const {
        for (const auto& s : a)
            if (!s.exact) return false;
        return true;
    }

    /// Minimum known order across entries (INT_MAX when all exact).
    int known_upto() const {
        int w = INT_MAX;
        for (const auto& s : a) w = std::min(w, s.known_upto());
        return w;
    }

    /// Largest stored exponent across entries (for degree bounds).
    int max_degree() const {
        int d = 0;
        for (const auto& s : a)
            if (!s.c.empty()) d = std::max(d, s.ord);
        return d;
    }

    bool is_zero_known() const {
        for (const auto& s : a)
            if (!s.is_zero_known()) return false;
        return true;
    }

    friend bool operator==(const SMat& x, const SMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.center == y.center && x.a == y.a;
    }
};

namespace detail {
inline void require_same_center(const SMat& x, const SMat& y, const char* what) {
    if (x.center != y.center)
        throw center_mismatch(std::string(what) + " on families with different centers");
}
}  // namespace detail

inline SMat map_add(const SMat& x, const SMat& y) {
    detail::require_same_center(x, y, "add");
    if (x.rows != y.rows || x.cols != y.cols) throw shape_mismatch("map_add shape");
    SMat r(x.rows, x.cols, x.center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = series_add(x.a[i], y.a[i]);
    return r;
}

inline SMat map_sub(const SMat& x, const SMat& y) {
    detail::require_same_center(x, y, "sub");
    if (x.rows != y.rows || x.cols != y.cols) throw shape_mismatch("map_sub shape");
    SMat r(x.rows, x.cols, x.center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = series_sub(x.a[i], y.a[i]);
    return r;
}

inline SMat map_mul(const SMat& x, const SMat& y) {
    detail::require_same_center(x, y, "mul");
    if (x.cols != y.rows) throw shape_mismatch("map_mul shape");
    SMat r(x.rows, y.cols, x.center);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            Series s = Series::zero_exact(x.center);
            for (int l = 0; l < x.cols; ++l)
                s = series_add(s, series_mul(x.at(i, l), y.at(l, j)));
            r.at(i, j) = s;
        }
    return r;
}

inline SMat map_scale(const Series& s, const SMat& x) {
    SMat r(x.rows, x.cols, x.center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = series_mul(s, x.a[i]);
    return r;
}

inline SMat map_scale(const Scalar& s, const SMat& x) {
    SMat r(x.rows, x.cols, x.center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = series_scale(s, x.a[i]);
    return r;
}

inline SMat transpose(const SMat& x) {
    SMat r(x.cols, x.rows, x.center);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

inline SMat conj_flip(const SMat& x) {
    SMat r(x.rows, x.cols, x.center.conj());
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = conj_flip(x.a[i]);
    return r;
}

inline SMat translate(const SMat& x, const Scalar& theta) {
    SMat r(x.rows, x.cols, x.center - theta);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = translate(x.a[i], theta);
    return r;
}

inline SMat recenter(const SMat& x, const Scalar& new_center) {
    SMat r(x.rows, x.cols, new_center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = recenter(x.a[i], new_center);
    return r;
}

inline SMat truncate_map(const SMat& x, int order) {
    SMat r(x.rows, x.cols, x.center);
    for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = truncate_to(x.a[i], order);
    return r;
}

inline SMat sub_map(const SMat& x, int r0, int c0, int nr, int nc) {
    if (r0 < 0 || c0 < 0 || r0 + nr > x.rows || c0 + nc > x.cols)
        throw shape_mismatch("sub_map block out of range");
    SMat r(nr, nc, x.center);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) r.at(i, j) = x.at(r0 + i, c0 + j);
    return r;
}

/// Writes block `b` into `x` at offset (r0, c0).
inline void set_block(SMat& x, int r0, int c0, const SMat& b) {
    if (!(x.center == b.center)) throw center_mismatch("set_block centers differ");
    if (r0 < 0 || c0 < 0 || r0 + b.rows > x.rows || c0 + b.cols > x.cols)
        throw shape_mismatch("set_block out of range");
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < b.cols; ++j) x.at(r0 + i, c0 + j) = b.at(i, j);
}

inline SMat hstack_map(const std::vector<SMat>& parts, int rows, const Scalar& center) {
    int cols = 0;
    for (const auto& p : parts) {
        if (p.rows != rows) throw shape_mismatch("hstack_map row counts differ");
        cols += p.cols;
    }
    SMat r(rows, cols, center);
    int off = 0;
    for (const auto& p : parts) {
        set_block(r, 0, off, p);
        off += p.cols;
    }
    return r;
}

inline SMat vstack_map(const std::vector<SMat>& parts, int cols, const Scalar& center) {
    int rows = 0;
    for (const auto& p : parts) {
        if (p.cols != cols) throw shape_mismatch("vstack_map column counts differ");
        rows += p.rows;
    }
    SMat r(rows, cols, center);
    int off = 0;
    for (const auto& p : parts) {
        set_block(r, off, 0, p);
        off += p.rows;
    }
    return r;
}

inline QMat evaluate(const SMat& x, const Scalar& point) {
    QMat q(x.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) q.at(i, j) = evaluate(x.at(i, j), point);
    return q;
}

/// Adjoint family against constant Hermitian inner products on domain and
/// codomain: A*(s) = G_dom^{-1} A(conj s)^H G_cod, a family at the conjugated
/// center.  A maps dom -> cod (rows = dim cod, cols = dim dom); the adjoint
/// maps cod -> dom.
inline SMat adjoint_family(const SMat& A, const QMat& g_dom, const QMat& g_cod) {
    if (g_dom.rows != A.cols || g_cod.rows != A.rows)
        throw shape_mismatch("adjoint_family: inner product dimensions");
    SMat flipped = transpose(conj_flip(A));  // dom x cod at conj center
    QMat gd_inv = inverse(g_dom);
    SMat r(A.cols, A.rows, flipped.center);
    // r = gd_inv * flipped * g_cod with constant outer factors
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < r.cols; ++j) {
            Series s = Series::zero_exact(flipped.center);
            for (int l = 0; l < A.cols; ++l) {
                if (gd_inv.at(i, l).is_zero()) continue;
                Series mid = Series::zero_exact(flipped.center);
                for (int m = 0; m < A.rows; ++m) {
                    if (g_cod.at(m, j).is_zero()) continue;
                    mid = series_add(mid, series_scale(g_cod.at(m, j), flipped.at(l, m)));
                }
                s = series_add(s, series_scale(gd_inv.at(i, l), mid));
            }
            r.at(i, j) = s;
        }
    return r;
}

/// Local inverse of a family that is holomorphic and invertible at the
/// center.  With a requested order (or any truncated entry) the inverse is
/// the Neumann sum to the tightest provable order; when every entry is exact
/// the inverse is exact whenever it exists as a polynomial family (constant
/// determinant), computed by evaluation and interpolation.
inline SMat local_inverse(const SMat& A, std::optional<int> req_ord = std::nullopt) {
    if (A.rows != A.cols) throw shape_mismatch("local_inverse of a non-square family");
    for (const auto& s : A.a)
        if (!s.c.empty() && s.val < 0)
            throw singular_input("local_inverse: entry has a pole at the center");
    QMat A0 = A.value_at_center();
    QMat B;
    try {
        B = inverse(A0);
    } catch (const singular_input&) {
        throw singular_input("local_inverse: family is singular at the center");
    }
    int n = A.rows;
    int w = A.known_upto();

    if (!req_ord && w == INT_MAX) {
        // Exact route: determinant must be constant for a polynomial inverse.
        int dbound = 0;
        for (int i = 0; i < n; ++i) {
            int rowdeg = 0;
            for (int j = 0; j < n; ++j)
                if (!A.at(i, j).c.empty()) rowdeg = std::max(rowdeg, A.at(i, j).ord);
            dbound += rowdeg;
        }
        std::vector<Scalar> xs, det_vals;
        std::vector<QMat> inv_vals;
        for (int k = 0; k <= dbound; ++k) {
            Scalar t = Scalar(Rat(k));
            QMat Ak = evaluate(A, A.center + t);
            xs.push_back(t);
            det_vals.push_back(det(Ak));
            if (det_vals.back().is_zero())
                throw insufficient_truncation(
                    "local_inverse: exact inverse is not polynomial; pass an explicit order");
            inv_vals.push_back(inverse(Ak));
        }
        Series dpoly = interpolate(xs, det_vals, A.center);
        if (!(dpoly.val == 0 && dpoly.ord == 0))
            throw insufficient_truncation(
                "local_inverse: exact inverse is not polynomial; pass an explicit order");
        Scalar c = dpoly.coeff(0);
        SMat R(n, n, A.center);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<Scalar> ys;
                for (std::size_t k = 0; k < xs.size(); ++k)
                    ys.push_back(inv_vals[k].at(i, j) * c);
                Series adj = interpolate(xs, ys, A.center);
                R.at(i, j) = series_scale(Scalar::one() / c, adj);
            }
        return R;
    }

    int target = req_ord ? *req_ord : w;
    if (w != INT_MAX && target > w)
        throw insufficient_truncation("local_inverse: requested order beyond known order");

    // Neumann sum: with E = B A - I (entries of valuation >= 1),
    // A^{-1} = (sum_k (-E)^k) B.
    SMat E = map_mul(SMat::constant(B, A.center), A);
    E = map_sub(E, SMat::identity(n, A.center));
    SMat acc = SMat::identity(n, A.center);
    SMat term = acc;
    bool exact_stop = false;
    for (int k = 1; k <= target; ++k) {
        term = map_mul(term, map_scale(Scalar(Rat(-1)), E));
        bool all_exact_zero = true, all_zero = true;
        for (const auto& s : term.a) {
            if (!s.is_zero_known()) all_zero = all_exact_zero = false;
            else if (!s.is_exactly_zero()) all_exact_zero = false;
        }
        if (all_exact_zero) {
            exact_stop = true;
            break;
        }
        if (all_zero) break;
        acc = map_add(acc, term);
    }
    SMat R = map_mul(acc, SMat::constant(B, A.center));
    if (!(exact_stop && A.all_exact())) R = truncate_map(R, target);
    return R;
}

/// Local diagonal normal form over the germ ring: row and column operations
/// L, R, invertible at the center, with L * A * R diagonal.  W holds the
/// normalized diagonal of exact monomials t^{e_0}, ..., t^{e_{r-1}} with
/// nondecreasing certified exponents, and `units` the unit germs u_k with
/// L * A * R = diag(u_k t^{e_k}).  For exact input every matrix is an exact
/// polynomial family, the identity holds exactly, and rank deficiency is
/// certified; for truncated input the scalings use truncated unit inverses
/// (units = 1), the identity holds to the propagated orders, and
/// insufficient_truncation is raised whenever a pivot or a vanishing block
/// cannot be certified from the available coefficients.
struct SmithForm {
    SMat W, L, R;
    std::vector<Series> units;
    std::vector<int> exponents;
    int rank = 0;

    /// diag(u_k t^{e_k}), the uncollapsed product L * A * R.
    SMat raw_diagonal() const {
        SMat d(W.rows, W.cols, W.center);
        for (int k = 0; k < rank; ++k) d.at(k, k) = series_mul(W.at(k, k), units[k]);
        return d;
    }
};

inline SmithForm local_smith_form(const SMat& A) {
    const bool exact_mode = A.all_exact();
    SmithForm out;
    SMat W = A;
    out.L = SMat::identity(A.rows, A.center);
    out.R = SMat::identity(A.cols, A.center);
    SMat& L = out.L;
    SMat& R = out.R;
    int n = std::min(A.rows, A.cols);
    for (int k = 0; k < n; ++k) {
        // find the certified minimum-valuation pivot in the trailing block
        int pi = -1, pj = -1, pe = INT_MAX;
        bool saw_uncertified_zero = false;
        int min_uncertified = INT_MAX;
        for (int i = k; i < A.rows; ++i)
            for (int j = k; j < A.cols; ++j) {
                const Series& s = W.at(i, j);
                if (s.is_zero_known()) {
                    if (!s.exact) {
                        saw_uncertified_zero = true;
                        min_uncertified = std::min(min_uncertified, s.ord + 1);
                    }
                    continue;
                }
                if (s.val < pe) {
                    pe = s.val;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) {
            if (saw_uncertified_zero)
                throw insufficient_truncation(
                    "local_smith_form: remaining block vanishes only up to truncation order");
            break;  // exact zero block: rank deficiency
        }
        if (saw_uncertified_zero && min_uncertified < pe)
            throw insufficient_truncation(
                "local_smith_form: pivot valuation cannot be certified minimal");
        // swap pivot into place
        if (pi != k) {
            for (int j = 0; j < A.cols; ++j) std::swap(W.at(pi, j), W.at(k, j));
            for (int j = 0; j < A.rows; ++j) std::swap(L.at(pi, j), L.at(k, j));
        }
        if (pj != k) {
            for (int i = 0; i < A.rows; ++i) std::swap(W.at(i, pj), W.at(i, k));
            for (int i = 0; i < A.cols; ++i) std::swap(R.at(i, pj), R.at(i, k));
        }
        Series unit = shift_exponents(W.at(k, k), -pe);  // pivot's unit part
        if (exact_mode) {
            // fraction-free clearing: row_i := u row_i - (W(i,k)/t^e) row_k
            // keeps every entry an exact polynomial and zeroes (i,k) exactly.
            for (int i = 0; i < A.rows; ++i) {
                if (i == k || W.at(i, k).is_zero_known()) continue;
                Series f = shift_exponents(W.at(i, k), -pe);
                for (int j = 0; j < A.cols; ++j)
                    W.at(i, j) = series_sub(series_mul(unit, W.at(i, j)),
                                            series_mul(f, W.at(k, j)));
                for (int j = 0; j < A.rows; ++j)
                    L.at(i, j) = series_sub(series_mul(unit, L.at(i, j)),
                                            series_mul(f, L.at(k, j)));
            }
            for (int j = 0; j < A.cols; ++j) {
                if (j == k || W.at(k, j).is_zero_known()) continue;
                Series g = shift_exponents(W.at(k, j), -pe);
                for (int i = 0; i < A.rows; ++i)
                    W.at(i, j) = series_sub(series_mul(unit, W.at(i, j)),
                                            series_mul(g, W.at(i, k)));
                for (int i = 0; i < A.cols; ++i)
                    R.at(i, j) = series_sub(series_mul(unit, R.at(i, j)),
                                            series_mul(g, R.at(i, k)));
            }
            out.units.push_back(unit);
        } else {
            // scale the pivot row by the truncated inverse of the unit part
            Series unit_inv = series_invert(unit);
            for (int j = 0; j < A.cols; ++j) W.at(k, j) = series_mul(unit_inv, W.at(k, j));
            for (int j = 0; j < A.rows; ++j) L.at(k, j) = series_mul(unit_inv, L.at(k, j));
            W.at(k, k) = Series::monomial(A.center, Scalar::one(), pe);
            for (int i = 0; i < A.rows; ++i) {
                if (i == k || W.at(i, k).is_zero_known()) continue;
                Series f = shift_exponents(W.at(i, k), -pe);
                for (int j = 0; j < A.cols; ++j)
                    W.at(i, j) = series_sub(W.at(i, j), series_mul(f, W.at(k, j)));
                for (int j = 0; j < A.rows; ++j)
                    L.at(i, j) = series_sub(L.at(i, j), series_mul(f, L.at(k, j)));
            }
            for (int j = 0; j < A.cols; ++j) {
                if (j == k || W.at(k, j).is_zero_known()) continue;
                Series g = shift_exponents(W.at(k, j), -pe);
                for (int i = 0; i < A.rows; ++i)
                    W.at(i, j) = series_sub(W.at(i, j), series_mul(g, W.at(i, k)));
                for (int i = 0; i < A.cols; ++i)
                    R.at(i, j) = series_sub(R.at(i, j), series_mul(g, R.at(i, k)));
            }
            out.units.push_back(Series::monomial(A.center, Scalar::one(), 0));
        }
        if (!out.exponents.empty() && pe < out.exponents.back())
            throw invariant_violation("local_smith_form: exponents not nondecreasing");
        out.exponents.push_back(pe);
        ++out.rank;
    }
    out.W = SMat(A.rows, A.cols, A.center);
    for (int k = 0; k < out.rank; ++k)
        out.W.at(k, k) = Series::monomial(A.center, Scalar::one(), out.exponents[k]);
    return out;
}

/// Certified vanishing order of det(A) at the center: the sum of the local
/// diagonal exponents.  Throws singular_input when A is exactly singular as
/// a family.
inline int det_vanishing_order(const SMat& A) {
    if (A.rows != A.cols) throw shape_mismatch("det_vanishing_order of non-square family");
    SmithForm sf = local_smith_form(A);
    if (sf.rank < A.rows)
        throw singular_input("det_vanishing_order: family is identically singular");
    int sum = 0;
    for (int e : sf.exponents) sum += e;
    return sum;
}

}  // namespace laurel

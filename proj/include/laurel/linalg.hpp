#pragma once

// Dense exact matrices over Q(i) and the small amount of linear algebra the
// rest of the library needs: reduced row echelon form, kernels, solving,
// determinants, inverses, Gram (Hermitian inner product) utilities and
// orthogonal projections.  Everything is deterministic: pivots are chosen by
// position, never by magnitude, so repeated runs produce identical bases.

#include <optional>
#include <vector>

#include "scalar.hpp"

namespace laurel {

struct QMat {
    int rows = 0;
    int cols = 0;
    std::vector<Scalar> a;  // row-major, size rows*cols

    QMat() = default;
    QMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
        if (r < 0 || c < 0) throw shape_mismatch("negative matrix dimension");
    }

    static QMat zero(int r, int c) { return QMat(r, c); }
    static QMat identity(int n) {
        QMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one();
        return m;
    }
    static QMat column(const std::vector<Scalar>& v) {
        QMat m(static_cast<int>(v.size()), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.a[i] = v[i];
        return m;
    }

    Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    const Scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    bool is_zero() const {
        for (const auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_square() const { return rows == cols; }

    QMat transpose() const {
        QMat t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    QMat conj() const {
        QMat t(rows, cols);
        for (std::size_t k = 0; k < a.size(); ++k) t.a[k] = a[k].conj();
        return t;
    }
    QMat conj_transpose() const { return conj().transpose(); }

    QMat operator-() const {
        QMat t(rows, cols);
        for (std::size_t k = 0; k < a.size(); ++k) t.a[k] = -a[k];
        return t;
    }

    friend QMat operator+(const QMat& x, const QMat& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw shape_mismatch("matrix add");
        QMat t(x.rows, x.cols);
        for (std::size_t k = 0; k < x.a.size(); ++k) t.a[k] = x.a[k] + y.a[k];
        return t;
    }
    friend QMat operator-(const QMat& x, const QMat& y) {
        if (x.rows != y.rows || x.cols != y.cols) throw shape_mismatch("matrix sub");
        QMat t(x.rows, x.cols);
        for (std::size_t k = 0; k < x.a.size(); ++k) t.a[k] = x.a[k] - y.a[k];
        return t;
    }
    friend QMat operator*(const QMat& x, const QMat& y) {
        if (x.cols != y.rows) throw shape_mismatch("matrix mul");
        QMat t(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                const Scalar& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < y.cols; ++j) {
                    const Scalar& ykj = y.at(k, j);
                    if (!ykj.is_zero()) t.at(i, j) += xik * ykj;
                }
            }
        return t;
    }
    friend QMat operator*(const Scalar& s, const QMat& y) {
        QMat t(y.rows, y.cols);
        for (std::size_t k = 0; k < y.a.size(); ++k) t.a[k] = s * y.a[k];
        return t;
    }
    friend bool operator==(const QMat& x, const QMat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const QMat& x, const QMat& y) { return !(x == y); }
};

inline QMat hstack(const QMat& x, const QMat& y) {
    if (x.rows != y.rows) throw shape_mismatch("hstack");
    QMat t(x.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i) {
        for (int j = 0; j < x.cols; ++j) t.at(i, j) = x.at(i, j);
        for (int j = 0; j < y.cols; ++j) t.at(i, x.cols + j) = y.at(i, j);
    }
    return t;
}

inline QMat vstack(const QMat& x, const QMat& y) {
    if (x.cols != y.cols) throw shape_mismatch("vstack");
    QMat t(x.rows + y.rows, x.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) t.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < x.cols; ++j) t.at(x.rows + i, j) = y.at(i, j);
    return t;
}

inline QMat submatrix(const QMat& m, int r0, int c0, int nr, int nc) {
    if (r0 < 0 || c0 < 0 || r0 + nr > m.rows || c0 + nc > m.cols)
        throw shape_mismatch("submatrix out of range");
    QMat t(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) t.at(i, j) = m.at(r0 + i, c0 + j);
    return t;
}

inline QMat take_columns(const QMat& m, const std::vector<int>& idx) {
    QMat t(m.rows, static_cast<int>(idx.size()));
    for (int j = 0; j < t.cols; ++j)
        for (int i = 0; i < m.rows; ++i) t.at(i, j) = m.at(i, idx[j]);
    return t;
}

// ---------------------------------------------------------------------------
// Echelon forms.  rref_inplace returns the pivot columns; the result is the
// unique reduced row echelon form, hence canonical.
// ---------------------------------------------------------------------------

inline std::vector<int> rref_inplace(QMat& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols && row < m.rows; ++col) {
        int p = -1;
        for (int i = row; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(row, j));
        Scalar inv = Scalar::one() / m.at(row, col);
        for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline int rank(QMat m) { return static_cast<int>(rref_inplace(m).size()); }

/// Canonical basis of the row space: the nonzero rows of the RREF.
inline QMat row_space_rref(QMat m) {
    auto piv = rref_inplace(m);
    QMat t(static_cast<int>(piv.size()), m.cols);
    for (int i = 0; i < t.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(i, j) = m.at(i, j);
    return t;
}

/// Canonical basis of the column space, returned as columns.
inline QMat col_space_basis(const QMat& m) { return row_space_rref(m.transpose()).transpose(); }

/// Reduce the rows of `rows` modulo the row space of an RREF matrix (pivot
/// columns as produced by rref_inplace / row_space_rref).
inline QMat reduce_rows_mod_rref(QMat rows, const QMat& rref) {
    if (rref.rows == 0) return rows;
    if (rows.cols != rref.cols) throw shape_mismatch("reduce_rows_mod_rref");
    // locate pivots: first nonzero entry of each rref row
    for (int r = 0; r < rref.rows; ++r) {
        int p = -1;
        for (int c = 0; c < rref.cols; ++c)
            if (!rref.at(r, c).is_zero()) {
                p = c;
                break;
            }
        if (p < 0) continue;
        for (int i = 0; i < rows.rows; ++i) {
            Scalar f = rows.at(i, p) / rref.at(r, p);
            if (f.is_zero()) continue;
            for (int c = 0; c < rows.cols; ++c) rows.at(i, c) -= f * rref.at(r, c);
        }
    }
    return rows;
}

/// Canonical kernel basis (columns x with m x = 0), from the RREF free
/// columns.  The basis vector for free column f has 1 in coordinate f.
inline QMat kernel_basis(QMat m) {
    int n = m.cols;
    auto piv = rref_inplace(m);
    std::vector<bool> is_piv(static_cast<std::size_t>(n), false);
    for (int c : piv) is_piv[static_cast<std::size_t>(c)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < n; ++c)
        if (!is_piv[static_cast<std::size_t>(c)]) free_cols.push_back(c);
    QMat k(n, static_cast<int>(free_cols.size()));
    for (int j = 0; j < k.cols; ++j) {
        int f = free_cols[static_cast<std::size_t>(j)];
        k.at(f, j) = Scalar::one();
        for (std::size_t r = 0; r < piv.size(); ++r)
            k.at(piv[r], j) = -m.at(static_cast<int>(r), f);
    }
    return k;
}

/// Solve A X = B exactly.  Returns the canonical particular solution with the
/// free variables set to zero, or nullopt when the system is inconsistent.
inline std::optional<QMat> solve(const QMat& A, const QMat& B) {
    if (A.rows != B.rows) throw shape_mismatch("solve");
    QMat aug = hstack(A, B);
    auto piv = rref_inplace(aug);
    for (int c : piv)
        if (c >= A.cols) return std::nullopt;
    QMat x(A.cols, B.cols);
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (int j = 0; j < B.cols; ++j) x.at(piv[r], j) = aug.at(static_cast<int>(r), A.cols + j);
    return x;
}

inline Scalar det(QMat m) {
    if (!m.is_square()) throw shape_mismatch("det of non-square matrix");
    Scalar d = Scalar::one();
    for (int col = 0; col < m.cols; ++col) {
        int p = -1;
        for (int i = col; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) {
                p = i;
                break;
            }
        if (p < 0) return Scalar::zero();
        if (p != col) {
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(p, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Scalar inv = Scalar::one() / m.at(col, col);
        for (int i = col + 1; i < m.rows; ++i) {
            if (m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col) * inv;
            for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

inline QMat inverse(const QMat& m) {
    if (!m.is_square()) throw shape_mismatch("inverse of non-square matrix");
    QMat aug = hstack(m, QMat::identity(m.rows));
    auto piv = rref_inplace(aug);
    if (static_cast<int>(piv.size()) != m.rows || (!piv.empty() && piv.back() >= m.cols))
        throw singular_input("matrix not invertible");
    return submatrix(aug, 0, m.cols, m.rows, m.rows);
}

// ---------------------------------------------------------------------------
// Subspace predicates.  Subspaces are passed as column-span matrices.
// ---------------------------------------------------------------------------

inline bool columns_contained_in(const QMat& sub, const QMat& space) {
    if (sub.cols == 0) return true;
    return solve(space, sub).has_value();
}

inline bool same_column_span(const QMat& x, const QMat& y) {
    return columns_contained_in(x, y) && columns_contained_in(y, x);
}

// ---------------------------------------------------------------------------
// Gram utilities.  A Gram matrix is Hermitian positive definite and encodes
// the inner product <u, v> = v^H G u, conjugate-linear in the second slot.
// ---------------------------------------------------------------------------

inline bool is_hermitian(const QMat& g) { return g.is_square() && g == g.conj_transpose(); }

/// Sylvester criterion with exact determinants of the leading minors.
inline bool is_positive_definite(const QMat& g) {
    if (!is_hermitian(g)) return false;
    for (int k = 1; k <= g.rows; ++k) {
        Scalar d = det(submatrix(g, 0, 0, k, k));
        if (!d.is_real() || !(d.re > 0)) return false;
    }
    return true;
}

inline Scalar inner(const QMat& u, const QMat& v, const QMat& g) {
    if (u.cols != 1 || v.cols != 1 || g.rows != u.rows || g.cols != v.rows)
        throw shape_mismatch("inner product");
    return (v.conj_transpose() * g * u).at(0, 0);
}

/// Adjoint of the constant map A : dom -> cod with respect to the two Gram
/// matrices: the unique A* with <A u, v>_cod = <u, A* v>_dom, namely
/// A* = G_dom^{-1} A^H G_cod.
inline QMat gram_adjoint(const QMat& A, const QMat& g_dom, const QMat& g_cod) {
    if (g_dom.rows != A.cols || g_cod.rows != A.rows) throw shape_mismatch("gram_adjoint");
    return inverse(g_dom) * A.conj_transpose() * g_cod;
}

/// Orthogonal projection onto the column span of B with respect to G.
/// B must have full column rank; pass a canonical basis.
inline QMat orthogonal_projector(const QMat& B, const QMat& G) {
    if (B.cols == 0) return QMat::zero(B.rows, B.rows);
    QMat gram = B.conj_transpose() * G * B;
    return B * inverse(gram) * B.conj_transpose() * G;
}

}  // namespace laurel

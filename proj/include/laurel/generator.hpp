#pragma once

// Seeded ground-truth model generators.  A gauge complex is a direct sum of
// elementary two-term blocks 0 -> C -(t^k)-> C -> 0 (t the local coordinate
// at the center) padded by identity blocks so that every coordinate belongs
// to exactly one block, then conjugated by seeded permutation and
// unitriangular polynomial gauges.  Conjugation by locally invertible
// families preserves composition-zero and germ cohomology, so the output
// carries exact expected cohomology dimensions: the sum of block exponents
// based at each degree.  Also generates degree-1 chain map instances with
// square witnesses from the gauge deformation I + xB, B^2 = 0.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "complex_family.hpp"

namespace laurel {

struct BlockSpec {
    int degree = 0;    // the block spans degrees (degree, degree + 1)
    int exponent = 1;  // map t^k; k = 0 is an identity block
};

struct GaugeProfile {
    std::vector<int> dims;          // ambient dimension per degree
    std::vector<BlockSpec> blocks;  // elementary blocks
    int gauge_degree = 1;           // max polynomial degree of gauge entries
    bool with_grams = false;        // seeded W^H W inner products
    Scalar center;
};

struct GeneratedComplex {
    ComplexFamily complex;
    std::vector<int> ground_truth;  // expected germ cohomology dim per degree
};

namespace detail {

inline Scalar small_scalar(std::mt19937_64& rng) {
    long re = static_cast<long>(rng() % 5) - 2;
    long im = static_cast<long>(rng() % 3) - 1;
    return Scalar(Rat(re), Rat(im));
}

inline Series small_poly(std::mt19937_64& rng, const Scalar& center, int max_degree) {
    std::vector<Scalar> cs;
    int d = max_degree >= 0 ? static_cast<int>(rng() % static_cast<unsigned long>(max_degree + 1))
                            : 0;
    for (int k = 0; k <= d; ++k) cs.push_back(small_scalar(rng));
    return Series::poly(center, std::move(cs));
}

/// W = permutation * (I + strictly-upper-triangular polynomial); returns
/// (W, W^{-1}), both exact polynomial families.
inline std::pair<SMat, SMat> seeded_gauge(std::mt19937_64& rng, int n, const Scalar& center,
                                          int max_degree) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng() % static_cast<unsigned long>(i + 1))]);
    QMat P(n, n), Pt(n, n);
    for (int i = 0; i < n; ++i) {
        P.at(perm[static_cast<std::size_t>(i)], i) = Scalar::one();
        Pt.at(i, perm[static_cast<std::size_t>(i)]) = Scalar::one();
    }
    SMat N(n, n, center, true);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) N.at(i, j) = small_poly(rng, center, max_degree);
    SMat U = map_add(SMat::identity(n, center), N);
    SMat Uinv = SMat::identity(n, center);
    SMat Npow = N;
    Scalar sign = -Scalar::one();
    for (int k = 1; k < n; ++k) {  // N is nilpotent: (I + N)^{-1} = sum (-N)^k
        Uinv = map_add(Uinv, map_scale(sign, Npow));
        sign = -sign;
        if (k + 1 < n) Npow = map_mul(Npow, N);
    }
    SMat W = map_mul(SMat::constant(P, center), U);
    SMat Winv = map_mul(Uinv, SMat::constant(Pt, center));
    return {W, Winv};
}

inline QMat seeded_gram(std::mt19937_64& rng, int n) {
    QMat W = QMat::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) W.at(i, j) = small_scalar(rng);
    return W.conj_transpose() * W;
}

}  // namespace detail

/// Block layout: at degree q the first c_{q-1} coordinates are block tops
/// from (q-1, q) and the last c_q are block bottoms of (q, q+1), where the
/// cover counts c are forced by the dims.  Throws when the dims admit no
/// exact cover or the requested blocks do not fit.
inline GeneratedComplex generate_gauge_complex(unsigned long long seed,
                                               const GaugeProfile& profile) {
    const std::vector<int>& n = profile.dims;
    if (n.empty()) throw shape_mismatch("gauge profile needs at least one degree");
    int m = static_cast<int>(n.size()) - 1;
    // cover counts
    std::vector<int> c(static_cast<std::size_t>(std::max(m, 0)), 0);
    for (int q = 0; q < m; ++q) {
        int prev = q > 0 ? c[static_cast<std::size_t>(q - 1)] : 0;
        c[static_cast<std::size_t>(q)] = n[static_cast<std::size_t>(q)] - prev;
        if (c[static_cast<std::size_t>(q)] < 0)
            throw invariant_violation("profile infeasible: no exact block cover at degree " +
                                      std::to_string(q));
    }
    int last = m > 0 ? c[static_cast<std::size_t>(m - 1)] : 0;
    if (last != n[static_cast<std::size_t>(m)])
        throw invariant_violation("profile infeasible: top degree not covered");
    // requested exponents per degree
    std::vector<std::vector<int>> exps(static_cast<std::size_t>(std::max(m, 0)));
    for (const BlockSpec& b : profile.blocks) {
        if (b.degree < 0 || b.degree >= m)
            throw invariant_violation("profile infeasible: block degree out of range");
        if (b.exponent < 0) throw invariant_violation("block exponent must be >= 0");
        exps[static_cast<std::size_t>(b.degree)].push_back(b.exponent);
    }
    for (int q = 0; q < m; ++q)
        if (static_cast<int>(exps[static_cast<std::size_t>(q)].size()) >
            c[static_cast<std::size_t>(q)])
            throw invariant_violation("profile infeasible: too many blocks at degree " +
                                      std::to_string(q));

    // base maps and ground truth
    std::vector<SMat> maps;
    std::vector<int> gt(n.size(), 0);
    for (int q = 0; q < m; ++q) {
        SMat P(n[static_cast<std::size_t>(q + 1)], n[static_cast<std::size_t>(q)],
               profile.center, true);
        int prev = q > 0 ? c[static_cast<std::size_t>(q - 1)] : 0;
        for (int t = 0; t < c[static_cast<std::size_t>(q)]; ++t) {
            int k = t < static_cast<int>(exps[static_cast<std::size_t>(q)].size())
                        ? exps[static_cast<std::size_t>(q)][static_cast<std::size_t>(t)]
                        : 0;
            P.at(t, prev + t) = Series::monomial(profile.center, Scalar::one(), k);
            gt[static_cast<std::size_t>(q)] += k;
        }
        maps.push_back(std::move(P));
    }

    // seeded gauges and grams
    std::mt19937_64 rng(seed);
    std::vector<SMat> W, Winv;
    for (int q = 0; q <= m; ++q) {
        auto [w, winv] = detail::seeded_gauge(rng, n[static_cast<std::size_t>(q)],
                                              profile.center, profile.gauge_degree);
        W.push_back(std::move(w));
        Winv.push_back(std::move(winv));
    }
    for (int q = 0; q < m; ++q)
        maps[static_cast<std::size_t>(q)] =
            map_mul(W[static_cast<std::size_t>(q + 1)],
                    map_mul(maps[static_cast<std::size_t>(q)], Winv[static_cast<std::size_t>(q)]));
    std::vector<QMat> grams;
    if (profile.with_grams)
        for (int q = 0; q <= m; ++q)
            grams.push_back(detail::seeded_gram(rng, n[static_cast<std::size_t>(q)]));

    GeneratedComplex out;
    out.complex = make_complex(profile.center, n, std::move(maps), std::move(grams));
    out.ground_truth = std::move(gt);
    return out;
}

/// A generated complex together with a degree-1 chain map T and a square
/// witness S, from the exact gauge deformation U(x) = I + xB with B^2 = 0:
///   T_q = P_q B_q - B_{q+1} P_q,   S_q = -B_{q+1} P_q B_q,
/// which satisfy P_{q+1} T_q + T_{q+1} P_q = 0 and
/// T_{q+1} T_q = -(P_{q+1} S_q + S_{q+1} P_q) identically.
struct DegreeOneInstance {
    ComplexFamily complex;
    std::vector<int> ground_truth;
    std::vector<SMat> T;
    std::vector<SMat> S;
};

inline DegreeOneInstance generate_degree1_instance(unsigned long long seed,
                                                   const GaugeProfile& profile) {
    GeneratedComplex g = generate_gauge_complex(seed, profile);
    const ComplexFamily& C = g.complex;
    std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ull);
    std::vector<QMat> B;
    for (int q = 0; q <= C.length(); ++q) {
        int nq = C.dim(q);
        QMat b(nq, nq);
        if (nq >= 2) {
            int i = static_cast<int>(rng() % static_cast<unsigned long>(nq));
            int j = static_cast<int>(rng() % static_cast<unsigned long>(nq - 1));
            if (j >= i) ++j;  // i != j so the single entry squares to zero
            b.at(i, j) = detail::small_scalar(rng);
        }
        B.push_back(std::move(b));
    }
    DegreeOneInstance out;
    out.ground_truth = std::move(g.ground_truth);
    out.T.reserve(static_cast<std::size_t>(C.length()));
    out.S.reserve(static_cast<std::size_t>(C.length()));
    for (int q = 0; q < C.length(); ++q) {
        SMat bq = SMat::constant(B[static_cast<std::size_t>(q)], C.center);
        SMat bq1 = SMat::constant(B[static_cast<std::size_t>(q + 1)], C.center);
        SMat pb = map_mul(C.map(q), bq);
        out.T.push_back(map_sub(pb, map_mul(bq1, C.map(q))));
        out.S.push_back(map_scale(-Scalar::one(), map_mul(bq1, pb)));
    }
    out.complex = std::move(g.complex);
    return out;
}

}  // namespace laurel

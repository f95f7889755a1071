#include <catch2/catch_amalgamated.hpp>

#include "corpus.hpp"
#include "laurel/generator.hpp"
#include "laurel/map_family.hpp"
#include "oracles.hpp"

using namespace laurel;

namespace {
Scalar sc(long re, long im = 0) { return Scalar(Rat(re), Rat(im)); }
Series mono(int k, Scalar c = Scalar::one()) { return Series::monomial(Scalar::zero(), c, k); }
}  // namespace

TEST_CASE("local inverse of a unit family is exact when polynomial") {
    Scalar z = Scalar::zero();
    SMat A(2, 2, z);
    A.at(0, 0) = mono(0, sc(2));
    A.at(1, 0) = mono(1);
    A.at(1, 1) = mono(0);
    SMat Ai = local_inverse(A);
    CHECK(Ai.all_exact());
    CHECK(map_mul(Ai, A) == SMat::identity(2, z));
    CHECK(map_mul(A, Ai) == SMat::identity(2, z));

    // unimodular with nonconstant entries
    SMat U(2, 2, z);
    U.at(0, 0) = Series::poly(z, {sc(1), sc(0), sc(1)});
    U.at(0, 1) = mono(1);
    U.at(1, 0) = mono(1);
    U.at(1, 1) = mono(0);
    SMat Ui = local_inverse(U);
    CHECK(Ui.all_exact());
    CHECK(map_mul(U, Ui) == SMat::identity(2, z));
}

TEST_CASE("local inverse with infinite expansion requires an explicit order") {
    Scalar z = Scalar::zero();
    SMat C(1, 1, z);
    C.at(0, 0) = Series::poly(z, {sc(1), sc(1)});
    CHECK_THROWS_AS(local_inverse(C), insufficient_truncation);
    SMat Ci = local_inverse(C, 3);
    for (int k = 0; k <= 3; ++k) CHECK(Ci.at(0, 0).coeff(k) == sc(k % 2 == 0 ? 1 : -1));
}

TEST_CASE("local smith form on frozen examples") {
    Scalar z = Scalar::zero();
    SMat B(2, 2, z);
    B.at(0, 0) = mono(2);
    B.at(0, 1) = mono(1);
    B.at(1, 0) = mono(1);
    B.at(1, 1) = Series::poly(z, {sc(1), sc(0), sc(1)});
    SmithForm sf = local_smith_form(B);
    CHECK(sf.rank == 2);
    CHECK(sf.exponents == std::vector<int>({0, 4}));
    CHECK(map_mul(map_mul(sf.L, B), sf.R) == sf.raw_diagonal());
    CHECK(det_vanishing_order(B) == 4);

    // rank-deficient: [[s, s], [s, s]]
    SMat D(2, 2, z);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) D.at(i, j) = mono(1);
    SmithForm sd = local_smith_form(D);
    CHECK(sd.rank == 1);
    CHECK(sd.exponents == std::vector<int>({1}));
    CHECK(map_mul(map_mul(sd.L, D), sd.R) == sd.raw_diagonal());
}

TEST_CASE("smith form on truncated input matches to the known order") {
    Scalar z = Scalar::zero();
    SMat B(2, 2, z);
    B.at(0, 0) = mono(2);
    B.at(0, 1) = mono(1);
    B.at(1, 0) = mono(1);
    B.at(1, 1) = Series::poly(z, {sc(1), sc(0), sc(1)});
    SMat Bt = truncate_map(B, 4);
    SmithForm sft = local_smith_form(Bt);
    CHECK(sft.exponents == std::vector<int>({0, 4}));
    SMat dif = map_sub(map_mul(map_mul(sft.L, Bt), sft.R), sft.raw_diagonal());
    CHECK(dif.is_zero_known());
}

TEST_CASE("smith exponents agree with the minor-valuation oracle") {
    Scalar z = Scalar::zero();

    SMat J(2, 2, z);
    J.at(0, 0) = mono(1);
    J.at(0, 1) = mono(0);
    J.at(1, 1) = mono(1);
    CHECK(local_smith_form(J).exponents == oracle::smith_exponents_by_minors(J));
    CHECK(oracle::smith_exponents_by_minors(J) == std::vector<int>({0, 2}));

    SMat B(2, 2, z);
    B.at(0, 0) = mono(2);
    B.at(0, 1) = mono(1);
    B.at(1, 0) = mono(1);
    B.at(1, 1) = Series::poly(z, {sc(1), sc(0), sc(1)});
    CHECK(local_smith_form(B).exponents == oracle::smith_exponents_by_minors(B));

    // gauge-generated square families from the two-term corpus rows
    for (const corpus::Item& it : corpus::two_term_items()) {
        GeneratedComplex g = generate_gauge_complex(it.seed, it.profile);
        const SMat& P = g.complex.map(0);
        SmithForm sf = local_smith_form(P);
        std::vector<int> want = oracle::smith_exponents_by_minors(P);
        CHECK(sf.rank == P.rows);
        CHECK(sf.exponents == want);
    }
}

TEST_CASE("adjoint family conjugate-flips the coefficients") {
    Scalar z = Scalar::zero();
    SMat J(2, 2, z);
    J.at(0, 0) = mono(1);
    J.at(0, 1) = mono(0);
    J.at(1, 1) = mono(1);
    SMat Js = adjoint_family(J, QMat::identity(2), QMat::identity(2));
    CHECK(Js.at(0, 0).coeff(1) == Scalar::one());
    CHECK(Js.at(1, 0).coeff(0) == Scalar::one());
    CHECK(Js.at(0, 1).is_exactly_zero());
    // with imaginary coefficients the entries are conjugated
    SMat M(1, 1, z);
    M.at(0, 0) = mono(1, Scalar::i());
    SMat Ms = adjoint_family(M, QMat::identity(1), QMat::identity(1));
    CHECK(Ms.at(0, 0).coeff(1) == -Scalar::i());
    // double adjoint is the identity
    SMat Jss = adjoint_family(Js, QMat::identity(2), QMat::identity(2));
    CHECK(Jss == J);
}

TEST_CASE("matrix family bookkeeping") {
    Scalar z = Scalar::zero();
    SMat A(2, 2, z);
    A.at(0, 0) = mono(1);
    A.at(0, 1) = mono(0, sc(3));
    CHECK(A.all_exact());
    QMat v0 = A.value_at_center();
    CHECK(v0.at(0, 0).is_zero());
    CHECK(v0.at(0, 1) == sc(3));
    QMat c1 = A.coeff_matrix(1);
    CHECK(c1.at(0, 0) == Scalar::one());
    CHECK(c1.at(0, 1).is_zero());
    CHECK(A.is_zero_known() == false);
    CHECK(SMat(2, 2, z).is_zero_known());

    SMat B(2, 2, Scalar::i());
    CHECK_THROWS_AS(map_add(A, B), center_mismatch);
    CHECK_THROWS_AS(map_mul(A, SMat(3, 3, z)), shape_mismatch);
}

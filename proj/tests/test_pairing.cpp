#include <catch2/catch_amalgamated.hpp>

#include "laurel/pairing.hpp"
#include "oracles.hpp"

using namespace laurel;

namespace {
Scalar sc(long re, long im = 0) { return Scalar(Rat(re), Rat(im)); }
Series mono(int k, Scalar c = Scalar::one()) { return Series::monomial(Scalar::zero(), c, k); }
}  // namespace

TEST_CASE("residue pairing of the one-map family is the imaginary unit") {
    SMat P(1, 1, Scalar::zero());
    P.at(0, 0) = mono(1);
    ComplexFamily C = make_complex(Scalar::zero(), {1, 1}, {P});
    PairingMatrix pm = cohomology_pairing_matrix(C, 0, true);
    REQUIRE(pm.entries.rows == 1);
    REQUIRE(pm.entries.cols == 1);
    CHECK(pm.entries.at(0, 0) == Scalar::i());
    CHECK(certify_nondegenerate(pm).pass);

    // antisymmetry on the generators
    PrincipalPart u = pm.basis_u.rep(0), v = pm.basis_v.rep(0);
    CHECK(swapped_pairing(C, 0, u, v) == -pm.entries.at(0, 0).conj());

    // the adjoint-slot identity: res<P u, v> = res<u, P* v>
    ComplexFamily D = adjoint_complex(C);
    std::vector<Series> pv(1), us = u.to_series();
    pv[0] = series_mul(D.map(0).at(0, 0), v.to_series()[0]);
    Scalar lhs = germ_pairing(C.map(0), C.gram(1), u, v);
    CHECK(lhs == Scalar::i() * residue_inner(us, pv, C.gram(0)));

    // independent convolution route
    CHECK(lhs == oracle::pairing_by_convolution(C.map(0), C.gram(1), u, v));
}

TEST_CASE("second-order zero pairs antidiagonally in the depth basis") {
    SMat P(1, 1, Scalar::zero());
    P.at(0, 0) = mono(2);
    ComplexFamily C = make_complex(Scalar::zero(), {1, 1}, {P});
    PairingMatrix pm = cohomology_pairing_matrix(C, 0, true);
    REQUIRE(pm.entries.rows == 2);
    REQUIRE(pm.entries.cols == 2);
    CHECK(certify_nondegenerate(pm).pass);

    // explicit principal parts, independent of basis ordering
    PrincipalPart u1 = PrincipalPart::zero(Scalar::zero(), 1, 2);
    PrincipalPart u2 = PrincipalPart::zero(Scalar::zero(), 1, 2);
    u1.coord(1, 0) = Scalar::one();
    u2.coord(2, 0) = Scalar::one();
    Scalar p11 = germ_pairing(C.map(0), C.gram(1), u1, u1);
    Scalar p12 = germ_pairing(C.map(0), C.gram(1), u1, u2);
    Scalar p21 = germ_pairing(C.map(0), C.gram(1), u2, u1);
    Scalar p22 = germ_pairing(C.map(0), C.gram(1), u2, u2);
    CHECK(p11.is_zero());
    CHECK(p22.is_zero());
    CHECK(p12 == Scalar::i());
    CHECK(p21 == Scalar::i());

    for (const PrincipalPart& a : {u1, u2})
        for (const PrincipalPart& b : {u1, u2})
            CHECK(germ_pairing(C.map(0), C.gram(1), a, b) ==
                  oracle::pairing_by_convolution(C.map(0), C.gram(1), a, b));
}

TEST_CASE("length-two complex: checked pairings and antisymmetry at both degrees") {
    SMat P0(2, 1, Scalar::zero()), P1(1, 2, Scalar::zero());
    P0.at(0, 0) = mono(1);
    P1.at(0, 1) = mono(1);
    ComplexFamily C = make_complex(Scalar::zero(), {1, 2, 1}, {P0, P1});
    for (int q = 0; q < 2; ++q) {
        PairingMatrix pm = cohomology_pairing_matrix(C, q, true);
        CHECK(certify_nondegenerate(pm).pass);
        for (int i = 0; i < pm.basis_u.dim; ++i)
            for (int j = 0; j < pm.basis_v.dim; ++j) {
                PrincipalPart u = pm.basis_u.rep(i), v = pm.basis_v.rep(j);
                CHECK(swapped_pairing(C, q, u, v) == -pm.entries.at(i, j).conj());
                CHECK(pm.entries.at(i, j) ==
                      oracle::pairing_by_convolution(C.map(q), C.gram(q + 1), u, v));
            }
    }
}

TEST_CASE("degenerate matrices produce annihilating null vectors") {
    PairingMatrix pm;
    pm.entries = QMat(2, 2);
    pm.entries.at(0, 0) = Scalar::one();
    NondegVerdict nv = certify_nondegenerate(pm);
    CHECK(!nv.pass);
    REQUIRE(nv.null_u.has_value());
    CHECK((nv.null_u->transpose() * pm.entries).is_zero());

    PairingMatrix rect;
    rect.entries = QMat(1, 2);
    rect.entries.at(0, 0) = Scalar::one();
    rect.entries.at(0, 1) = Scalar::one();
    NondegVerdict nv2 = certify_nondegenerate(rect);
    CHECK(!nv2.pass);
    CHECK((nv2.null_u.has_value() || nv2.null_v.has_value()));
}

TEST_CASE("pairing degree bounds and center discipline") {
    SMat P(1, 1, Scalar::zero());
    P.at(0, 0) = mono(1);
    ComplexFamily C = make_complex(Scalar::zero(), {1, 1}, {P});
    CHECK_THROWS_AS(cohomology_pairing_matrix(C, 1, false), shape_mismatch);
    CHECK_THROWS_AS(cohomology_pairing_matrix(C, -1, false), shape_mismatch);

    PrincipalPart u = PrincipalPart::zero(Scalar::zero(), 1, 1);
    PrincipalPart wrong = PrincipalPart::zero(Scalar::i(), 1, 1);
    CHECK_THROWS_AS(germ_pairing(C.map(0), C.gram(1), wrong, u), center_mismatch);
}

TEST_CASE("truncated factors across the residue line are rejected") {
    std::vector<Series> a = {Series::make(Scalar::zero(), -2, {sc(1), sc(1)}, -1, false)};
    std::vector<Series> b = {Series::make(Scalar::zero(), 0, {sc(1)}, 0, false)};
    // unknown tail of b meets unknown coefficients of a across the line
    CHECK_THROWS_AS(residue_inner(a, b, QMat::identity(1)), insufficient_truncation);
    // exact second factor: residue collects only known terms
    std::vector<Series> be = {Series::poly(Scalar::zero(), {sc(1)})};
    CHECK(residue_inner(a, be, QMat::identity(1)) == sc(1));
}

#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "laurel/spectrum.hpp"

using namespace laurel;

namespace {
Scalar S(long re, long im = 0) { return Scalar(Rat(re), Rat(im)); }
Series mono(int exp, long coeff = 1) { return Series::monomial(S(0), S(coeff), exp); }
}  // namespace

TEST_CASE("scalar ordering is a strict total order on Q(i)") {
    std::vector<Scalar> pts = {S(0), S(1), S(-1), S(0, 1), S(0, -1), S(1, 1),
                               Scalar(Rat(1, 2), Rat(-3, 4)), Scalar(Rat(1, 2), Rat(0))};
    for (const Scalar& a : pts) {
        CHECK_FALSE(scalar_less(a, a));
        for (const Scalar& b : pts) {
            if (a == b) continue;
            CHECK(scalar_less(a, b) != scalar_less(b, a));
            for (const Scalar& c : pts)
                if (scalar_less(a, b) && scalar_less(b, c)) CHECK(scalar_less(a, c));
        }
    }
    CHECK(scalar_less(S(0, -1), S(0, 1)));
    CHECK(scalar_less(S(0, 1), S(1, -5)));
}

TEST_CASE("integer factorization") {
    auto f = factor_int(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[2] == 3);
    CHECK(f[3] == 2);
    CHECK(f[5] == 1);
    CHECK(detail::is_prime(Int(1000003)));
    CHECK_FALSE(detail::is_prime(Int(1000001)));
    auto big = factor_int(Int(1000003) * Int(999983));
    REQUIRE(big.size() == 2);
    CHECK(big[Int(999983)] == 1);
    CHECK(big[Int(1000003)] == 1);
    CHECK_THROWS_AS(factor_int(Int(0)), singular_input);
}

TEST_CASE("gaussian-integer factorization and divisors") {
    auto f5 = factor_gaussian(GInt(5, 0));
    REQUIRE(f5.size() == 2);
    CHECK(f5[0].first == GInt(1, 2));
    CHECK(f5[0].second == 1);
    CHECK(f5[1].first == GInt(2, 1));
    CHECK(f5[1].second == 1);
    CHECK(divisors_gaussian(GInt(2, 0)).size() == 3);  // 1, 1+i, 2 up to units
    CHECK(ggcd(GInt(5, 0), GInt(2, 1)).norm() == 5);
    CHECK(canonical_associate(GInt(0, -7)) == GInt(7, 0));
}

TEST_CASE("root extraction over Q(i)") {
    SECTION("rational and imaginary roots with multiplicity") {
        QiPoly p = poly_mul(poly_mul(QiPoly::linear(S(1)), QiPoly::linear(S(1))),
                            QiPoly::from_coeffs({S(1), S(0), S(1)}));
        auto sf = squarefree_decomposition(p);
        REQUIRE(sf.size() == 2);
        CHECK(sf[0].second == 1);
        CHECK(sf[0].first.degree() == 2);
        CHECK(sf[1].second == 2);
        CHECK(sf[1].first.degree() == 1);
        RootExtraction ext = qi_roots(p);
        REQUIRE(ext.roots.size() == 3);
        CHECK(ext.unresolved.empty());
        CHECK(ext.roots[0].first == S(0, -1));
        CHECK(ext.roots[0].second == 1);
        CHECK(ext.roots[1].first == S(0, 1));
        CHECK(ext.roots[1].second == 1);
        CHECK(ext.roots[2].first == S(1));
        CHECK(ext.roots[2].second == 2);
    }
    SECTION("gaussian-rational roots") {
        QiPoly p = poly_mul(QiPoly::from_coeffs({-S(1, 1), S(2)}), QiPoly::linear(S(-3)));
        RootExtraction ext = qi_roots(p);
        REQUIRE(ext.roots.size() == 2);
        CHECK(ext.unresolved.empty());
        CHECK(ext.roots[0].first == S(-3));
        CHECK(ext.roots[1].first == Scalar(Rat(1, 2), Rat(1, 2)));
    }
    SECTION("irreducible factors are carried verbatim") {
        QiPoly q = QiPoly::from_coeffs({-S(2), S(0), S(1)});
        QiPoly half = QiPoly::from_coeffs({Scalar(Rat(-1, 2), Rat(0)), S(1)});
        QiPoly p = poly_mul(q, poly_mul(half, half));
        RootExtraction ext = qi_roots(p);
        REQUIRE(ext.roots.size() == 1);
        CHECK(ext.roots[0].first == Scalar(Rat(1, 2), Rat(0)));
        CHECK(ext.roots[0].second == 2);
        REQUIRE(ext.unresolved.size() == 1);
        CHECK(ext.unresolved[0].second == 1);
        CHECK(ext.unresolved[0].first.degree() == 2);
        CHECK(to_string(ext.unresolved[0].first) == "(-2) + (1)*t^2");
    }
    SECTION("zero polynomial is rejected") {
        CHECK_THROWS_AS(qi_roots(QiPoly::zero()), singular_input);
    }
}

TEST_CASE("determinant of a polynomial family by interpolation") {
    SMat m(2, 2, S(0), true);
    m.at(0, 0) = mono(2);
    m.at(0, 1) = mono(1);
    m.at(1, 0) = mono(1);
    m.at(1, 1) = Series::poly(S(0), {S(1), S(0), S(1)});  // 1 + s^2
    QiPoly d = det_family_poly(m);                        // s^2(1+s^2) - s^2 = s^4
    REQUIRE(d.degree() == 4);
    for (int k = 0; k <= 3; ++k) CHECK(d.coeff(k).is_zero());
    CHECK(d.coeff(4) == S(1));
}

TEST_CASE("spectrum scan: two-term models") {
    SECTION("multiplication by the parameter") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = mono(1);
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0});
        SpectrumReport r = spectrum_scan(C, 0);
        CHECK(r.det_poly.degree() == 2);
        REQUIRE(r.spectrum.size() == 1);
        CHECK(r.certified_zero.empty());
        CHECK(r.unresolved.empty());
        CHECK(r.spectrum[0].sigma0 == S(0));
        CHECK(r.spectrum[0].dim == 1);
        SpectrumReport r1 = spectrum_scan(C, 1);
        CHECK(r1.spectrum.empty());
        REQUIRE(r1.certified_zero.size() == 1);
        CHECK(r1.certified_zero[0].sigma0 == S(0));
    }
    SECTION("constant invertible family has empty spectrum") {
        SMat P0 = SMat::constant(QMat::identity(2), S(0));
        ComplexFamily C = make_complex(S(0), {2, 2}, {P0});
        SpectrumReport r = spectrum_scan(C, 0);
        CHECK(r.spectrum.empty());
        CHECK(r.certified_zero.empty());
        CHECK(r.unresolved.empty());
        CHECK(r.det_poly.degree() == 0);
    }
    SECTION("shifted family: adjoint root is certified exact") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = series_add(mono(1), Series::poly(S(0), {-S(1, 1)}));
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0});
        SpectrumReport r = spectrum_scan(C, 0);
        REQUIRE(r.spectrum.size() == 1);
        CHECK(r.spectrum[0].sigma0 == S(1, 1));
        CHECK(r.spectrum[0].dim == 1);
        REQUIRE(r.certified_zero.size() == 1);
        CHECK(r.certified_zero[0].sigma0 == S(1, -1));
    }
}

TEST_CASE("spectrum scan: three-term middle degree") {
    SMat P0(2, 1, S(0), true);
    P0.at(0, 0) = mono(1);
    P0.at(1, 0) = mono(2);
    SMat P1(1, 2, S(0), true);
    P1.at(0, 0) = mono(2, -1);
    P1.at(0, 1) = mono(1);
    ComplexFamily C = make_complex(S(0), {1, 2, 1}, {P0, P1});
    SpectrumReport r = spectrum_scan(C, 1);
    CHECK(r.unresolved.empty());
    REQUIRE(r.spectrum.size() == 1);
    CHECK(r.spectrum[0].sigma0 == S(0));
    CHECK(r.spectrum[0].dim == 1);
    REQUIRE(r.certified_zero.size() == 2);
    CHECK(r.certified_zero[0].sigma0 == S(0, -1));
    CHECK(r.certified_zero[1].sigma0 == S(0, 1));
}

TEST_CASE("spectrum scan: explicit candidates and unresolved factors") {
    SECTION("explicit candidate list") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = mono(1);
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0});
        SpectrumReport r = spectrum_scan(C, 0, std::vector<Scalar>{S(5), S(0)});
        REQUIRE(r.spectrum.size() == 1);
        CHECK(r.spectrum[0].sigma0 == S(0));
        REQUIRE(r.certified_zero.size() == 1);
        CHECK(r.certified_zero[0].sigma0 == S(5));
    }
    SECTION("irrational spectrum stays unresolved") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = series_add(mono(2), Series::poly(S(0), {-S(2)}));
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0});
        SpectrumReport r = spectrum_scan(C, 0);
        CHECK(r.spectrum.empty());
        CHECK(r.certified_zero.empty());
        REQUIRE(r.unresolved.size() == 1);
        CHECK(r.unresolved[0].first.degree() == 2);
    }
    SECTION("degree out of range") {
        SMat P0(1, 1, S(0), true);
        P0.at(0, 0) = mono(1);
        ComplexFamily C = make_complex(S(0), {1, 1}, {P0});
        CHECK_THROWS_AS(spectrum_scan(C, 5), shape_mismatch);
    }
}

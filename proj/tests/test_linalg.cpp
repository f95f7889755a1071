#include <catch2/catch_amalgamated.hpp>

#include "laurel/linalg.hpp"

using namespace laurel;

namespace {
Scalar sc(long re, long im = 0) { return Scalar(Rat(re), Rat(im)); }

QMat mat(int r, int c, std::vector<Scalar> v) {
    QMat m(r, c);
    int idx = 0;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = v[static_cast<std::size_t>(idx++)];
    return m;
}
}  // namespace

TEST_CASE("rank, rref and kernel") {
    QMat A = mat(2, 3, {sc(1), sc(2), sc(3), sc(2), sc(4), sc(6)});
    CHECK(rank(A) == 1);
    QMat K = kernel_basis(A);
    CHECK(K.cols == 2);
    CHECK((A * K).is_zero());

    QMat B = mat(2, 2, {sc(0), sc(1), sc(0), sc(0)});
    CHECK(rank(B) == 1);
    QMat KB = kernel_basis(B);
    CHECK(KB.cols == 1);
    CHECK(!KB.at(0, 0).is_zero());
    CHECK(KB.at(1, 0).is_zero());
}

TEST_CASE("determinant and inverse over gaussian rationals") {
    QMat A = QMat::identity(3);
    A.at(0, 2) = Scalar::i();
    CHECK(det(A) == Scalar::one());
    QMat Ai = inverse(A);
    CHECK(Ai.at(0, 2) == -Scalar::i());
    CHECK(Ai * A == QMat::identity(3));

    QMat B = mat(2, 2, {sc(1), sc(2), sc(3), sc(4)});
    CHECK(det(B) == sc(-2));
    CHECK(inverse(B) * B == QMat::identity(2));

    QMat S = mat(2, 2, {sc(1), sc(2), sc(2), sc(4)});
    CHECK(det(S).is_zero());
    CHECK_THROWS_AS(inverse(S), singular_input);
}

TEST_CASE("solve returns a particular solution or nothing") {
    QMat A = mat(2, 2, {sc(1), sc(1), sc(0), sc(1)});
    QMat b = mat(2, 1, {sc(3), sc(1)});
    auto x = solve(A, b);
    REQUIRE(x.has_value());
    CHECK(A * *x == b);

    QMat Z = QMat::zero(2, 2);
    QMat c = mat(2, 1, {sc(1), sc(0)});
    CHECK(!solve(Z, c).has_value());
    CHECK(solve(Z, QMat::zero(2, 1)).has_value());
}

TEST_CASE("stacking, slicing and span comparisons") {
    QMat x = mat(2, 1, {sc(1), sc(0)});
    QMat y = mat(2, 1, {sc(0), sc(1)});
    QMat h = hstack(x, y);
    CHECK(h == QMat::identity(2));
    CHECK(submatrix(h, 0, 1, 2, 1) == y);
    CHECK(take_columns(h, {1}) == y);
    CHECK(same_column_span(h, mat(2, 2, {sc(1), sc(1), sc(1), sc(-1)})));
    CHECK(columns_contained_in(x, h));
    CHECK(!columns_contained_in(h, x));
    QMat v = vstack(x.transpose(), y.transpose());
    CHECK(v == QMat::identity(2));
}

TEST_CASE("hermitian and positive definite predicates") {
    QMat g = mat(2, 2, {sc(2), Scalar::i(), -Scalar::i(), sc(2)});
    CHECK(is_hermitian(g));
    CHECK(is_positive_definite(g));
    QMat ng = mat(2, 2, {sc(1), sc(0), sc(0), sc(-1)});
    CHECK(is_hermitian(ng));
    CHECK(!is_positive_definite(ng));
    QMat nh = mat(2, 2, {sc(1), Scalar::i(), Scalar::i(), sc(1)});
    CHECK(!is_hermitian(nh));
}

TEST_CASE("gram adjoint reproduces the defining identity") {
    // <A u, v>_gcod == <u, A* v>_gdom for all basis vectors
    QMat A = mat(2, 2, {sc(1), sc(2, 1), sc(0), sc(-1)});
    QMat gd = mat(2, 2, {sc(2), sc(0), sc(0), sc(3)});
    QMat gc = mat(2, 2, {sc(1), Scalar::i(), -Scalar::i(), sc(2)});
    QMat As = gram_adjoint(A, gd, gc);
    for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) {
            QMat eu = QMat::zero(2, 1), ev = QMat::zero(2, 1);
            eu.at(u, 0) = Scalar::one();
            ev.at(v, 0) = Scalar::one();
            CHECK(inner(A * eu, ev, gc) == inner(eu, As * ev, gd));
        }
}

TEST_CASE("orthogonal projector is idempotent and fixes the subspace") {
    QMat B = mat(2, 1, {sc(1), Scalar::i()});
    QMat G = QMat::identity(2);
    QMat P = orthogonal_projector(B, G);
    CHECK(P * P == P);
    CHECK(P * B == B);
    // self-adjoint with respect to G
    CHECK(gram_adjoint(P, G, G) == P);
}

TEST_CASE("shape errors are reported") {
    QMat a = QMat::zero(2, 2), b = QMat::zero(3, 2);
    CHECK_THROWS_AS(a * b, shape_mismatch);
    CHECK_THROWS_AS(a + b, shape_mismatch);
    CHECK_THROWS_AS(det(QMat::zero(2, 3)), shape_mismatch);
}

#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "factor.hpp"
#include "special.hpp"
#include "testkit.hpp"

using namespace qcf;

namespace {

const Tolerance tol;

} // namespace

TEST_CASE("projector canonical form on fixed inputs") {
    SUBCASE("[[1,1],[0,0]] has one coupled block with b = 1") {
        QMatrix a(2, 2);
        a(0, 0) = a(0, 1) = Quaternion::one();
        SpecialForm f = projector_canonical(a, tol);
        REQUIRE(f.summary.b_values.size() == 1);
        CHECK(f.summary.b_values[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.summary.ones == 0);
        CHECK(f.summary.zeros == 0);
    }
    SUBCASE("rank-one orthogonal projector diagonalizes") {
        QMatrix a(2, 2);
        a(0, 0) = a(0, 1) = a(1, 0) = a(1, 1) = Quaternion{0.5};
        SpecialForm f = projector_canonical(a, tol);
        CHECK(f.summary.b_values.empty());
        CHECK(f.summary.ones == 1);
        CHECK(f.summary.zeros == 1);
    }
    SUBCASE("identity") {
        SpecialForm f = projector_canonical(QMatrix::identity(3), tol);
        CHECK(f.summary.b_values.empty());
        CHECK(f.summary.ones == 3);
        CHECK(f.summary.zeros == 0);
    }
    SUBCASE("non-idempotent input is rejected") {
        QMatrix a = QMatrix::diagonal({Quaternion{2}});
        CHECK_THROWS_AS(projector_canonical(a, tol), Error);
    }
}

TEST_CASE("square-zero canonical form on fixed inputs") {
    SUBCASE("single coupling with quaternion entry: b = |i+j| = sqrt(2)") {
        QMatrix a(2, 2);
        a(0, 1) = Quaternion{0, 1, 1, 0};
        SpecialForm f = square_zero_canonical(a, tol);
        REQUIRE(f.summary.b_values.size() == 1);
        CHECK(f.summary.b_values[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(f.summary.zeros == 0);
        CHECK(f.summary.ones == 0);
    }
    SUBCASE("zero matrix") {
        SpecialForm f = square_zero_canonical(QMatrix::zero(3, 3), tol);
        CHECK(f.summary.b_values.empty());
        CHECK(f.summary.zeros == 3);
    }
    SUBCASE("already canonical block sum") {
        QMatrix a(3, 3);
        a(0, 1) = Quaternion{2};
        SpecialForm f = square_zero_canonical(a, tol);
        REQUIRE(f.summary.b_values.size() == 1);
        CHECK(f.summary.b_values[0] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.summary.zeros == 1);
    }
    SUBCASE("non-square-zero input is rejected") {
        CHECK_THROWS_AS(square_zero_canonical(QMatrix::identity(2), tol), Error);
    }
}

TEST_CASE("assemble_blocks emits the fixed order") {
    SUBCASE("idempotent blocks then ones") {
        BlockSummary s{BlockKind::idempotent, {2.0}, 1, 0};
        QMatrix want(3, 3);
        want(0, 0) = Quaternion::one();
        want(0, 1) = Quaternion{2};
        want(2, 2) = Quaternion::one();
        CHECK(assemble_blocks(s) == want);
    }
    SUBCASE("all zeros") {
        CHECK(assemble_blocks({BlockKind::square_zero, {}, 0, 2}) == QMatrix::zero(2, 2));
    }
    SUBCASE("square-zero coupling plus zero") {
        BlockSummary s{BlockKind::square_zero, {1.0}, 0, 1};
        QMatrix want(3, 3);
        want(0, 1) = Quaternion::one();
        CHECK(assemble_blocks(s) == want);
    }
}

TEST_CASE("special form invariants on random instances") {
    SeededRng rng(61);
    for (int t = 0; t < 60; ++t) {
        int n = 2 + t % 5;
        bool idem = t % 2 == 0;
        auto [a, planted] = idem ? random_projector(n, rng) : random_square_zero(n, rng);
        SpecialForm f = idem ? projector_canonical(a, tol) : square_zero_canonical(a, tol);

        // census matches the planted data
        CHECK(f.summary.ones == planted.ones);
        CHECK(f.summary.zeros == planted.zeros);
        REQUIRE(f.summary.b_values.size() == planted.b_values.size());
        for (size_t i = 0; i < planted.b_values.size(); ++i)
            CHECK(std::abs(f.summary.b_values[i] - planted.b_values[i]) < 1e-8);

        // the assembled representative satisfies its equation exactly
        QMatrix canon = assemble_blocks(f.summary);
        if (idem)
            CHECK(canon * canon == canon);
        else
            CHECK(canon * canon == QMatrix::zero(n, n));

        // completeness: the returned unitary actually reduces A
        CHECK(residual(f.U.conj_transpose() * a * f.U, canon) <= 1e-8 * (1.0 + a.frobenius()));
        CHECK(residual(f.U.conj_transpose() * f.U, QMatrix::identity(n)) <= 1e-10 * n);

        // b count ties to the rank census
        if (idem)
            CHECK(static_cast<int>(f.summary.b_values.size()) == rank(a, tol) - f.summary.ones);
        else
            CHECK(static_cast<int>(f.summary.b_values.size()) == rank(a, tol));
    }
}

TEST_CASE("non-orthogonal projectors reduce and stay invariant under Haar conjugation") {
    SeededRng rng(63);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + t % 4;
        int r = rng.uniform_int(0, n);
        QMatrix p = skew_projector(n, r, rng);
        SpecialForm f = projector_canonical(p, tol);
        QMatrix u = haar_unitary(n, rng);
        SpecialForm g = projector_canonical(u.conj_transpose() * p * u, tol);
        CHECK(f.summary.ones == g.summary.ones);
        CHECK(f.summary.zeros == g.summary.zeros);
        REQUIRE(f.summary.b_values.size() == g.summary.b_values.size());
        for (size_t i = 0; i < f.summary.b_values.size(); ++i)
            CHECK(std::abs(f.summary.b_values[i] - g.summary.b_values[i]) < 1e-8);
        CHECK(rank(p, tol) == r);
    }
}

#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "schur.hpp"
#include "testkit.hpp"

using namespace qcf;

namespace {

const Tolerance tol;

} // namespace

TEST_CASE("conjugate partition") {
    CHECK(conjugate_partition({3, 2, 2}) == Partition{3, 3, 1});
    CHECK(conjugate_partition({1}) == Partition{1});
    CHECK(conjugate_partition({2, 2}) == Partition{2, 2});
    SUBCASE("involution on random partitions") {
        SeededRng rng(51);
        for (int t = 0; t < 200; ++t) {
            Partition p = random_partition(1 + t % 9, rng);
            CHECK(conjugate_partition(conjugate_partition(p)) == p);
        }
    }
}

TEST_CASE("weyr characteristic") {
    SUBCASE("J3(0) + J1(0) has Weyr (2,1,1), the conjugate of Segre (3,1)") {
        QMatrix a = QMatrix::jordan_block(3, Complex{0, 0}).direct_sum(QMatrix::zero(1, 1));
        CHECK(weyr_characteristic(a, 0.0, tol) == Partition{2, 1, 1});
        CHECK(conjugate_partition({3, 1}) == Partition{2, 1, 1});
    }
    SUBCASE("zero matrix") {
        CHECK(weyr_characteristic(QMatrix::zero(3, 3), 0.0, tol) == Partition{3});
    }
    SUBCASE("single chain") {
        CHECK(weyr_characteristic(QMatrix::jordan_block(2, Complex{5, 0}), 5.0, tol) ==
              Partition{1, 1});
    }
    SUBCASE("non-eigenvalue is rejected") {
        CHECK_THROWS_AS(weyr_characteristic(QMatrix::identity(2), 0.0, tol), Error);
    }
}

TEST_CASE("modified Jordan matrix") {
    SUBCASE("lambda 0, Weyr (2,1) puts the coupling at entry (1,3)") {
        QMatrix b = modified_jordan({{Complex{0, 0}, 3}}, {{2, 1}});
        QMatrix want(3, 3);
        want(0, 2) = Quaternion::one();
        CHECK(b == want);
    }
    SUBCASE("single 1x1") {
        CHECK(modified_jordan({{Complex{5, 0}, 1}}, {{1}}) == QMatrix::diagonal({Quaternion{5}}));
    }
    SUBCASE("Weyr (1,1) is the Jordan block itself") {
        CHECK(modified_jordan({{Complex{0, 0}, 2}}, {{1, 1}}) ==
              QMatrix::jordan_block(2, Complex{0, 0}));
    }
    SUBCASE("non-decreasing Weyr list is rejected") {
        CHECK_THROWS_AS(modified_jordan({{Complex{0, 0}, 3}}, {{1, 2}}), Error);
    }
    SUBCASE("multiplicity mismatch is rejected") {
        CHECK_THROWS_AS(modified_jordan({{Complex{0, 0}, 4}}, {{2, 1}}), Error);
    }
}

TEST_CASE("modified Jordan matrix has the Jordan rank profile") {
    SeededRng rng(53);
    for (int t = 0; t < 60; ++t) {
        int n = 1 + t % 6;
        Partition segre = random_partition(n, rng);
        Partition weyr = conjugate_partition(segre);
        QMatrix b = modified_jordan({{Complex{0, 0}, n}}, {weyr});
        QMatrix j(0, 0);
        for (int part : segre) j = j.direct_sum(QMatrix::jordan_block(part, Complex{0, 0}));
        for (int l = 1; l <= segre[0]; ++l)
            CHECK(rank(b.power(l), tol) == rank(j.power(l), tol));
        // the quoted identity: rank(A^l) = r_{l+1} + ... + r_s
        for (int l = 1; l < static_cast<int>(weyr.size()); ++l) {
            int expect = 0;
            for (size_t i = l; i < weyr.size(); ++i) expect += weyr[i];
            CHECK(rank(b.power(l), tol) == expect);
        }
    }
}

TEST_CASE("strengthened Schur on fixed inputs") {
    SUBCASE("already in form") {
        QMatrix a(2, 2);
        a(0, 0) = a(1, 1) = Quaternion{5};
        a(0, 1) = Quaternion{4};
        SchurRealForm f = strengthened_schur(a, tol);
        CHECK(f.F == a);
        CHECK(residual(f.U, QMatrix::identity(2)) <= 1e-12);
        CHECK(f.lambdas == std::vector<double>{5, 5});
        CHECK(f.sizes == std::vector<int>{1, 1});
    }
    SUBCASE("lower nilpotent with quaternion phase") {
        QMatrix a(2, 2);
        a(1, 0) = Quaternion::j();
        SchurRealForm f = strengthened_schur(a, tol);
        QMatrix want(2, 2);
        want(0, 1) = Quaternion::one();
        CHECK(f.F == want);
        CHECK(residual(f.U.conj_transpose() * a * f.U, want) <= 1e-10);
    }
    SUBCASE("distinct diagonal") {
        QMatrix a = QMatrix::diagonal({Quaternion{2}, Quaternion{1}});
        SchurRealForm f = strengthened_schur(a, tol);
        CHECK(f.F == a);
    }
    SUBCASE("nonreal spectrum is rejected") {
        CHECK_THROWS_AS(strengthened_schur(QMatrix::diagonal({Quaternion::i()}), tol), Error);
        try {
            strengthened_schur(QMatrix::diagonal({Quaternion::i()}), tol);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::non_real_spectrum);
        }
    }
}

TEST_CASE("strengthened Schur invariants on planted spectra") {
    SeededRng rng(55);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + t % 5;
        PlantedRealSpectrum inst = random_real_spectrum(n, rng);
        SchurRealForm f = strengthened_schur(inst.a, tol);
        CHECK(residual(f.U.conj_transpose() * inst.a * f.U, f.F) <=
              1e-8 * std::max(1.0, inst.a.frobenius()));
        CHECK(f.sizes == inst.sizes);
        REQUIRE(f.lambdas.size() == inst.lambdas.size());
        for (size_t i = 0; i < f.lambdas.size(); ++i)
            CHECK(std::abs(f.lambdas[i] - inst.lambdas[i]) < 1e-7);
        // equal-run couplings carry a strictly positive real diagonal
        std::vector<int> start{0};
        for (int sz : f.sizes) start.push_back(start.back() + sz);
        for (size_t b = 0; b + 1 < f.sizes.size(); ++b) {
            if (f.lambdas[b] != f.lambdas[b + 1]) continue;
            CHECK(f.sizes[b] >= f.sizes[b + 1]);
            for (int d = 0; d < f.sizes[b + 1]; ++d) {
                const Quaternion& q = f.F(start[b] + d, start[b + 1] + d);
                CHECK(q.imag_norm() == 0.0);
                CHECK(q.w > tol.eps_canon);
            }
        }
        // block data invariant under a fresh conjugation
        QMatrix w = haar_unitary(n, rng);
        SchurRealForm again = strengthened_schur(w.conj_transpose() * inst.a * w, tol);
        CHECK(again.sizes == f.sizes);
        for (size_t i = 0; i < f.lambdas.size(); ++i)
            CHECK(std::abs(again.lambdas[i] - f.lambdas[i]) < 1e-7);
    }
}

TEST_CASE("block diagonal stabilizer oracle") {
    QMatrix a(2, 2);
    a(0, 0) = a(1, 1) = Quaternion{5};
    a(0, 1) = Quaternion{4};
    SchurRealForm f = strengthened_schur(a, tol);

    SUBCASE("conformal block diagonal passes") {
        SeededRng rng(57);
        QMatrix v = haar_unitary(1, rng).direct_sum(haar_unitary(1, rng));
        CHECK(verify_block_diag_stabilizer(f, v, tol));
    }
    SUBCASE("cross-block permutation fails") {
        QMatrix v(2, 2);
        v(0, 1) = Quaternion::one();
        v(1, 0) = Quaternion::one();
        CHECK_FALSE(verify_block_diag_stabilizer(f, v, tol));
    }
    SUBCASE("identity passes") {
        CHECK(verify_block_diag_stabilizer(f, QMatrix::identity(2), tol));
    }
}

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "littlewood.hpp"
#include "testkit.hpp"

using namespace qcf;

namespace {

const Tolerance tol;

} // namespace

TEST_CASE("seeded rng reproduces its stream") {
    SeededRng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int t = 0; t < 100; ++t) {
        double xa = a.normal(), xb = b.normal(), xc = c.normal();
        all_equal = all_equal && xa == xb;
        any_diff = any_diff || xa != xc;
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("haar unitary") {
    SeededRng rng(81);
    SUBCASE("single entry is a unit quaternion") {
        QMatrix u = haar_unitary(1, rng);
        CHECK(std::abs(u(0, 0).norm() - 1.0) < 1e-12);
    }
    SUBCASE("reproducible and unitary") {
        SeededRng r1(5), r2(5);
        CHECK(haar_unitary(3, r1) == haar_unitary(3, r2));
        for (int t = 0; t < 20; ++t) {
            int n = 1 + t % 6;
            QMatrix u = haar_unitary(n, rng);
            CHECK(residual(u.conj_transpose() * u, QMatrix::identity(n)) <= 1e-10);
        }
    }
}

TEST_CASE("gadget M_a layout") {
    QMatrix base = gadget_ma(Quaternion::zero());
    QMatrix want(3, 3);
    want(0, 0) = Quaternion{3};
    want(0, 1) = Quaternion::one();
    want(1, 1) = Quaternion{2};
    want(1, 2) = Quaternion::one();
    want(2, 2) = Quaternion::one();
    CHECK(base == want);
    QMatrix with_a = gadget_ma(Quaternion{1, 2, 3, 4});
    CHECK(with_a(0, 2) == Quaternion{1, 2, 3, 4});
}

TEST_CASE("gadget M_a similarity matches standardization") {
    SeededRng rng(83);
    for (int t = 0; t < 30; ++t) {
        Quaternion a = rng.normal_quaternion();
        Quaternion s = normalized(rng.normal_quaternion());
        Quaternion b = conjugate(s) * a * s;
        CHECK(unitarily_similar(gadget_ma(a), gadget_ma(b), tol));
        Quaternion c = rng.normal_quaternion();
        bool same = std::abs(standardize(a) - standardize(c)) <= tol.eps_canon * (1.0 + a.norm());
        CHECK(unitarily_similar(gadget_ma(a), gadget_ma(c), tol) == same);
    }
    // standardization collapses the imaginary direction, not its magnitude
    CHECK(unitarily_similar(gadget_ma(Quaternion::i()), gadget_ma(Quaternion::k()), tol));
    CHECK_FALSE(unitarily_similar(gadget_ma(Quaternion::i()),
                                  gadget_ma(Quaternion{0, 2, 0, 0}), tol));
}

TEST_CASE("gadget M(A,B,C,D) block layout") {
    QMatrix z(1, 1);
    QMatrix m = gadget_m5(z, z, z, z);
    REQUIRE(m.rows() == 5);
    QMatrix want(5, 5);
    for (int t = 0; t < 5; ++t) want(t, t) = Quaternion{5.0 - t};
    want(0, 1) = Quaternion::one();
    want(1, 2) = Quaternion::one();
    CHECK(m == want);

    SUBCASE("scalar inputs land in their slots") {
        QMatrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
        a(0, 0) = Quaternion{1, 1, 0, 0};
        b(0, 0) = Quaternion{0, 0, 2, 0};
        c(0, 0) = Quaternion{3};
        d(0, 0) = Quaternion{0, 0, 0, 4};
        QMatrix g = gadget_m5(a, b, c, d);
        CHECK(g(0, 2) == a(0, 0));
        CHECK(g(0, 4) == b(0, 0));
        CHECK(g(0, 3) == c(0, 0));
        CHECK(g(3, 4) == d(0, 0));
    }
    SUBCASE("shape mismatch is rejected") {
        CHECK_THROWS(gadget_m5(z, z, z, QMatrix::zero(2, 2)));
    }
}

TEST_CASE("gadget M5 respects the admissible block transformations") {
    SeededRng rng(85);
    QMatrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
    a(0, 0) = rng.normal_quaternion();
    b(0, 0) = rng.normal_quaternion();
    c(0, 0) = rng.normal_quaternion();
    d(0, 0) = rng.normal_quaternion();
    Quaternion v = normalized(rng.normal_quaternion());
    Quaternion vp = normalized(rng.normal_quaternion());
    Quaternion vpp = normalized(rng.normal_quaternion());
    QMatrix a2(1, 1), b2(1, 1), c2(1, 1), d2(1, 1);
    a2(0, 0) = conjugate(v) * a(0, 0) * v;
    b2(0, 0) = conjugate(v) * b(0, 0) * vpp;
    c2(0, 0) = conjugate(v) * c(0, 0) * vp;
    d2(0, 0) = conjugate(vp) * d(0, 0) * vpp;
    QMatrix m1 = gadget_m5(a, b, c, d);
    QMatrix m2 = gadget_m5(a2, b2, c2, d2);
    CHECK(trace_word_oracle(m1, m2, 4));

    QMatrix c_shift = c;
    c_shift(0, 0) += Quaternion::one();
    CHECK_FALSE(trace_word_oracle(m1, gadget_m5(a, b, c_shift, d), 4));
}

TEST_CASE("wild gadgets emit the displayed blocks") {
    SUBCASE("kind b: cube-zero shift") {
        QMatrix z(1, 1);
        GadgetPair g = gadget_wild(WildKind::b, z);
        QMatrix want(3, 3);
        want(0, 1) = Quaternion::one();
        want(1, 2) = Quaternion::one();
        CHECK(g.first == want);
        CHECK_FALSE(g.second.has_value());
        CHECK(g.first.power(3) == QMatrix::zero(3, 3));
        CHECK_FALSE(g.first.power(2) == QMatrix::zero(3, 3));
    }
    SUBCASE("kind a: 8x8 with lambda diagonal and j-coupled corner") {
        QMatrix z(1, 1);
        GadgetPair g = gadget_wild(WildKind::a, z, Quaternion{0.5, 2, 0, 0});
        REQUIRE(g.first.rows() == 8);
        for (int i = 0; i < 8; ++i) CHECK(g.first(i, i) == Quaternion{0.5, 2, 0, 0});
        CHECK(g.first(0, 4) == Quaternion{4});
        CHECK(g.first(0, 6) == Quaternion::j());
        CHECK(g.first(0, 7) == Quaternion::zero()); // M = 0 kills the Mj slot
        CHECK(g.first(1, 5) == Quaternion{3});
        CHECK(g.first(1, 6) == Quaternion::j());
        CHECK(g.first(1, 7) == Quaternion::j());
        CHECK(g.first(2, 6) == Quaternion{2});
        CHECK(g.first(3, 7) == Quaternion::one());
        QMatrix m(1, 1);
        m(0, 0) = Quaternion{1, 1, 0, 0};
        GadgetPair h = gadget_wild(WildKind::a, m);
        CHECK(h.first(0, 7) == m(0, 0) * Quaternion::j());
    }
    SUBCASE("kind c: both outputs are idempotent for any M") {
        SeededRng rng(87);
        QMatrix m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m(i, j) = rng.normal_quaternion();
        GadgetPair g = gadget_wild(WildKind::c, m);
        REQUIRE(g.second.has_value());
        CHECK(g.first * g.first == g.first);
        CHECK(residual(*g.second * *g.second, *g.second) <= 1e-12 * (1.0 + g.second->frobenius()));
    }
    SUBCASE("kind d: the displayed pair") {
        QMatrix m(1, 1);
        m(0, 0) = Quaternion{2};
        GadgetPair g = gadget_wild(WildKind::d, m);
        REQUIRE(g.second.has_value());
        QMatrix first(2, 2), second(2, 2);
        first(0, 1) = Quaternion::one();
        second(0, 1) = Quaternion{2};
        CHECK(g.first == first);
        CHECK(*g.second == second);
        // mutually- and self-annihilating
        CHECK(g.first * *g.second == QMatrix::zero(2, 2));
        CHECK(*g.second * g.first == QMatrix::zero(2, 2));
        CHECK(g.first * g.first == QMatrix::zero(2, 2));
    }
}

TEST_CASE("trace word oracle") {
    SeededRng rng(89);
    SUBCASE("invariant on an orbit") {
        PlantedNonderogatory inst = random_nonderogatory(4, rng);
        QMatrix u = haar_unitary(4, rng);
        CHECK(trace_word_oracle(inst.a, u.conj_transpose() * inst.a * u, 4));
        CHECK(trace_word_oracle(inst.a, inst.a, 4));
    }
    SUBCASE("separates the shift from zero: Re tr(A A*) is 1 vs 0") {
        QMatrix j2 = QMatrix::jordan_block(2, Complex{0, 0});
        QMatrix prod = j2 * j2.conj_transpose();
        double re_trace = prod(0, 0).w + prod(1, 1).w;
        CHECK(re_trace == 1.0);
        CHECK_FALSE(trace_word_oracle(j2, QMatrix::zero(2, 2), 2));
    }
}

TEST_CASE("random forests are forests and witnesses realize them") {
    SeededRng rng(91);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + t % 5;
        auto edges = random_forest(n, rng);
        // acyclic by union-find
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int i) {
            while (parent[i] != i) i = parent[i] = parent[parent[i]];
            return i;
        };
        for (auto [l, r] : edges) {
            CHECK(l < r);
            CHECK(find(l) != find(r));
            parent[find(l)] = find(r);
        }
        QMatrix w = forest_witness(n, edges);
        CanonicalResult res = canonical_form(w, tol);
        CHECK(res.canon == w);
        auto got = graph(res); // recorded in reduction order
        std::sort(got.begin(), got.end());
        CHECK(got == edges);
    }
}

TEST_CASE("planted generators deliver their contracts") {
    SeededRng rng(93);
    for (int t = 0; t < 10; ++t) {
        int n = 2 + t % 4;
        PlantedNonderogatory inst = random_nonderogatory(n, rng);
        CHECK(is_nonderogatory(inst.a, tol));
        auto [p, summary] = random_projector(n, rng);
        CHECK(residual(p * p, p) <= tol.eps_canon * (1.0 + p.frobenius() * p.frobenius()));
        auto [sz, summary2] = random_square_zero(n, rng);
        CHECK((sz * sz).frobenius() <= tol.eps_canon * std::max(1e-12, sz.frobenius() * sz.frobenius()));
    }
}

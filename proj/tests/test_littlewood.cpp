#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "littlewood.hpp"
#include "testkit.hpp"

using namespace qcf;

namespace {

const Tolerance tol;

struct Entry {
    int i, j;
    Quaternion q;
};

QMatrix upper(const std::vector<Complex>& diag, const std::vector<Entry>& entries) {
    QMatrix t(static_cast<int>(diag.size()), static_cast<int>(diag.size()));
    for (size_t i = 0; i < diag.size(); ++i) t(static_cast<int>(i), static_cast<int>(i)) = from_complex(diag[i]);
    for (const Entry& e : entries) t(e.i, e.j) = e.q;
    return t;
}

double entry_gap(const QMatrix& a, const QMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            worst = std::max(worst, (a(i, j) - b(i, j)).norm());
    return worst;
}

std::vector<std::string> cases_of(const CanonicalResult& r) {
    std::vector<std::string> out;
    for (const LogRow& row : r.log) out.push_back(row.case_id);
    return out;
}

} // namespace

TEST_CASE("relation tracker mechanics") {
    RelationTracker t({ScalarField::C, ScalarField::C, ScalarField::C, ScalarField::H});
    CHECK_FALSE(t.related(0, 1));
    t.merge(0, 1, +1);
    CHECK(t.related(0, 1));
    CHECK(t.relative_exponent(0, 1) == 1);
    t.merge(1, 2, -1); // s_1 = s_2^{-1}
    CHECK(t.related(0, 2));
    CHECK(t.relative_exponent(0, 2) == -1);
    CHECK(t.relative_exponent(1, 2) == -1);
    CHECK(t.field(0) == ScalarField::C);
    t.restrict_field(2, ScalarField::R);
    CHECK(t.field(0) == ScalarField::R);
    // fields never climb back up
    t.restrict_field(0, ScalarField::C);
    CHECK(t.field(1) == ScalarField::R);
    CHECK(t.field(3) == ScalarField::H);
    CHECK_THROWS_AS(t.merge(0, 2, +1), Error);
}

TEST_CASE("is_nonderogatory") {
    CHECK(is_nonderogatory(QMatrix::jordan_block(2, Complex{0, 1}), tol));
    CHECK_FALSE(is_nonderogatory(QMatrix::diagonal({Quaternion::i(), Quaternion::i()}), tol));
    CHECK(is_nonderogatory(QMatrix::diagonal({Quaternion{1}, Quaternion{2}}), tol));
    CHECK_FALSE(is_nonderogatory(QMatrix::identity(2), tol));
    CHECK(is_nonderogatory(QMatrix::jordan_block(3, Complex{5, 0}), tol));
}

TEST_CASE("triangularize") {
    SUBCASE("matrices already in form pass through unchanged") {
        QMatrix a = upper({{0, 2}, {0, 1}}, {{0, 1, Quaternion{3, 4, 1, 0}}});
        TriangularForm f = triangularize(a, tol);
        CHECK(f.U == QMatrix::identity(2));
        CHECK(f.T == a);
        CHECK(f.diag == std::vector<Complex>{{0, 2}, {0, 1}});
    }
    SUBCASE("conjugated Jordan block regains the triangular shape") {
        SeededRng rng(71);
        QMatrix j2 = QMatrix::jordan_block(2, Complex{0, 1});
        QMatrix u = haar_unitary(2, rng);
        QMatrix a = u.conj_transpose() * j2 * u;
        TriangularForm f = triangularize(a, tol);
        REQUIRE(f.diag.size() == 2);
        CHECK(f.diag[0] == f.diag[1]);
        CHECK(std::abs(f.diag[0] - Complex{0, 1}) < 1e-8);
        CHECK(residual(f.U.conj_transpose() * a * f.U, f.T) <= 1e-8 * (1.0 + a.frobenius()));
        CHECK(f.T(1, 0).is_zero());
        CHECK(std::abs(complex_split(f.T(0, 1)).z1) > tol.eps_canon);
    }
    SUBCASE("descending sort under the eigenvalue order") {
        QMatrix a = QMatrix::diagonal({Quaternion{0, 1, 0, 0}, Quaternion{0, 2, 0, 0}});
        TriangularForm f = triangularize(a, tol);
        CHECK(f.diag == std::vector<Complex>{{0, 2}, {0, 1}});
    }
    SUBCASE("derogatory input is rejected") {
        CHECK_THROWS_AS(triangularize(QMatrix::identity(2), tol), Error);
        try {
            triangularize(QMatrix::identity(2), tol);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::derogatory);
        }
    }
}

TEST_CASE("initial tracker fields") {
    {
        RelationTracker t = initial_tracker({{0, 1}, {3, 0}});
        CHECK(t.field(0) == ScalarField::C);
        CHECK(t.field(1) == ScalarField::H);
    }
    {
        RelationTracker t = initial_tracker({{5, 0}, {5, 0}});
        CHECK(t.field(0) == ScalarField::H);
        CHECK(t.field(1) == ScalarField::H);
    }
    {
        RelationTracker t = initial_tracker({{0, 2}, {0, 1}, {0, 0}});
        CHECK(t.field(0) == ScalarField::C);
        CHECK(t.field(1) == ScalarField::C);
        CHECK(t.field(2) == ScalarField::H);
    }
}

TEST_CASE("is_fixed") {
    RelationTracker t({ScalarField::H, ScalarField::H, ScalarField::C, ScalarField::C});
    CHECK(is_fixed(Quaternion::zero(), 0, 1, t));   // unrelated, zero entry
    CHECK_FALSE(is_fixed(Quaternion{3}, 0, 1, t));  // unrelated, nonzero
    t.merge(0, 1, +1);
    CHECK(is_fixed(Quaternion{3}, 0, 1, t));        // reals are central
    CHECK_FALSE(is_fixed(Quaternion{3, 0, 1, 0}, 0, 1, t));
    t.merge(2, 3, +1);
    CHECK_FALSE(is_fixed(Quaternion{1, 0, 1, 0}, 2, 3, t)); // z2 = 1 varies
    CHECK(is_fixed(Quaternion{1, 2, 0, 0}, 2, 3, t));       // complex entry, s_l = s_r
}

TEST_CASE("reduce_entry on the worked examples") {
    SUBCASE("case 2a rewrites to |z1| + |z2| j and pins the pair to R") {
        ReductionState state(upper({{0, 2}, {0, 1}}, {{0, 1, Quaternion{3, 0, 4, 0}}}),
                             {{0, 2}, {0, 1}}, tol);
        state.reduce_entry(0, 1);
        CHECK(state.matrix()(0, 1) == Quaternion{3, 0, 4, 0});
        CHECK(state.tracker().related(0, 1));
        CHECK(state.tracker().field(0) == ScalarField::R);
        CanonicalResult r = state.result();
        REQUIRE(r.log.size() == 1);
        CHECK(r.log[0].case_id == "2a");
        CHECK(r.edges.size() == 1);
    }
    SUBCASE("case 2c rewrites 2k to 2j and ties s_1 = s_2^{-1}") {
        ReductionState state(upper({{0, 2}, {0, 1}}, {{0, 1, Quaternion{0, 0, 0, 2}}}),
                             {{0, 2}, {0, 1}}, tol);
        state.reduce_entry(0, 1);
        CHECK(state.matrix()(0, 1) == Quaternion{0, 0, 2, 0});
        CHECK(state.tracker().relative_exponent(0, 1) == -1);
        CHECK(state.tracker().field(0) == ScalarField::C);
        CHECK(state.result().log[0].case_id == "2c");
    }
    SUBCASE("case 1a rewrites to the norm") {
        ReductionState state(upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{1, 1, 1, 1}}}),
                             {{3, 0}, {1, 0}}, tol);
        state.reduce_entry(0, 1);
        CHECK(state.matrix()(0, 1) == Quaternion{2});
        CHECK(state.tracker().related(0, 1));
        CHECK(state.tracker().field(0) == ScalarField::H);
        CHECK(state.result().log[0].case_id == "1a");
    }
    SUBCASE("entries must arrive in the fixed order") {
        ReductionState state(upper({{3, 0}, {2, 0}, {1, 0}}, {}), {{3, 0}, {2, 0}, {1, 0}}, tol);
        CHECK_THROWS_AS(state.reduce_entry(0, 2), Error);
        try {
            state.reduce_entry(0, 2);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::order_violation);
        }
    }
}

TEST_CASE("reduction walks the remaining cases") {
    SUBCASE("case 3b after a -1 merge") {
        QMatrix t = upper({{0, 3}, {0, 2}, {0, 1}},
                          {{0, 1, Quaternion::one()},
                           {1, 2, Quaternion::j()},
                           {0, 2, Quaternion{1, 0, 2, 0}}});
        CanonicalResult r = canonical_form(t, tol);
        CHECK(cases_of(r) == std::vector<std::string>{"2b", "2c", "3b"});
        CHECK(r.canon(0, 2) == Quaternion{1, 0, 2, 0});
        CHECK(r.edges.size() == 2);
    }
    SUBCASE("case 3a after a +1 merge") {
        QMatrix t = upper({{0, 3}, {0, 2}, {0, 1}},
                          {{0, 1, Quaternion::one()},
                           {1, 2, Quaternion::one()},
                           {0, 2, Quaternion{0, 1, 0, -2}}});
        CanonicalResult r = canonical_form(t, tol);
        CHECK(cases_of(r) == std::vector<std::string>{"2b", "2b", "3a"});
        // z1 = i is pinned, z2 = -2i turns into |z2| = 2
        CHECK(r.canon(0, 2) == Quaternion{0, 1, 2, 0});
    }
    SUBCASE("case 4 between a real-pinned class and a complex class") {
        QMatrix t = upper({{0, 3}, {0, 2}, {0, 1}},
                          {{0, 1, Quaternion{1, 0, 1, 0}}, {1, 2, Quaternion{2, 0, 0, 0}}});
        CanonicalResult r = canonical_form(t, tol);
        CHECK(cases_of(r) == std::vector<std::string>{"2a", "4", "fixed"});
        CHECK(r.canon(1, 2) == Quaternion{2});
        CHECK(r.edges.size() == 2);
    }
    SUBCASE("case 5 flips the sign to make the lead component positive") {
        QMatrix t = upper({{0, 4}, {0, 3}, {0, 2}, {0, 1}},
                          {{0, 1, Quaternion{1, 0, 1, 0}},
                           {2, 3, Quaternion{1, 0, 1, 0}},
                           {0, 2, Quaternion{-1, 0, 2, 0}}});
        CanonicalResult r = canonical_form(t, tol);
        CHECK(cases_of(r) ==
              std::vector<std::string>{"2a", "fixed", "2a", "5", "fixed", "fixed"});
        CHECK(r.canon(0, 2) == Quaternion{1, 0, -2, 0});
        CHECK(r.edges.size() == 3);
    }
    SUBCASE("case 1b standardizes a related quaternion entry") {
        CanonicalResult r = canonical_form(gadget_ma(Quaternion::i()), tol);
        CHECK(cases_of(r) == std::vector<std::string>{"1a", "1a", "1b"});
        CHECK(r.canon(0, 2) == Quaternion::i());
        CHECK(r.edges.size() == 2);
    }
}

TEST_CASE("canonical form on fixed inputs") {
    SUBCASE("diagonal with distinct reals is already canonical") {
        QMatrix a = QMatrix::diagonal({Quaternion{3}, Quaternion{2}, Quaternion{1}});
        CanonicalResult r = canonical_form(a, tol);
        CHECK(r.canon == a);
        CHECK(r.edges.empty());
    }
    SUBCASE("norm replaces a free quaternion entry") {
        QMatrix a = upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{1, 1, 1, 1}}});
        CanonicalResult r = canonical_form(a, tol);
        CHECK(r.canon == upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{2}}}));
        REQUIRE(r.edges.size() == 1);
        CHECK(r.edges[0].l == 0);
        CHECK(r.edges[0].r == 1);
    }
    SUBCASE("canonical forms are invariant over the unitary orbit") {
        SeededRng rng(73);
        QMatrix c = upper({{0, 3}, {0, 2}, {0, 1}},
                          {{0, 1, Quaternion::one()}, {1, 2, Quaternion{2}}});
        QMatrix u = haar_unitary(3, rng);
        CanonicalResult r = canonical_form(u.conj_transpose() * c * u, tol);
        CHECK(entry_gap(r.canon, c) <= 1e-8);
    }
}

TEST_CASE("canonical form is idempotent") {
    SeededRng rng(75);
    for (int t = 0; t < 20; ++t) {
        int n = 2 + t % 4;
        PlantedNonderogatory inst = random_nonderogatory(n, rng);
        CanonicalResult r = canonical_form(inst.a, tol);
        CanonicalResult again = canonical_form(r.canon, tol);
        CHECK(entry_gap(again.canon, r.canon) <= tol.eps_canon);
        CHECK(cases_of(again) == cases_of(r));
        REQUIRE(again.edges.size() == r.edges.size());
        for (size_t e = 0; e < r.edges.size(); ++e) {
            CHECK(again.edges[e].l == r.edges[e].l);
            CHECK(again.edges[e].r == r.edges[e].r);
        }
    }
}

TEST_CASE("canonical form invariance and structure on random orbits") {
    SeededRng rng(77);
    for (int t = 0; t < 50; ++t) {
        int n = 2 + t % 5;
        PlantedNonderogatory inst = random_nonderogatory(n, rng);
        QMatrix u = haar_unitary(n, rng);
        CanonicalResult ra = canonical_form(inst.a, tol);
        CanonicalResult rb = canonical_form(u.conj_transpose() * inst.a * u, tol);
        CHECK(entry_gap(ra.canon, rb.canon) <= 1e-6);
        CHECK(cases_of(ra) == cases_of(rb));

        // diagonal equals the sorted standard eigenvalues
        EigenList eigs = right_eigenvalues(inst.a, tol);
        std::vector<Complex> expanded;
        for (const EigenPair& p : eigs)
            for (int c = 0; c < p.multiplicity; ++c) expanded.push_back(p.value);
        REQUIRE(expanded.size() == ra.diag.size());
        for (size_t i = 0; i < expanded.size(); ++i)
            CHECK(std::abs(expanded[i] - ra.diag[i]) <= tol.eps_eig * (1.0 + inst.a.frobenius()));

        // entries across graph components are exactly zero
        std::vector<int> comp(n);
        for (int i = 0; i < n; ++i) comp[i] = i;
        for (const GraphEdge& e : ra.edges) {
            int a = comp[e.l], b = comp[e.r];
            for (int& c : comp)
                if (c == a) c = b;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (comp[i] != comp[j]) CHECK(ra.canon(i, j).is_zero());
    }
}

TEST_CASE("unitary similarity decision") {
    SUBCASE("same orbit") {
        SeededRng rng(79);
        PlantedNonderogatory inst = random_nonderogatory(4, rng);
        QMatrix u = haar_unitary(4, rng);
        CHECK(unitarily_similar(inst.a, u.conj_transpose() * inst.a * u, tol));
    }
    SUBCASE("different coupling moduli split the orbit") {
        QMatrix a = QMatrix::jordan_block(2, Complex{0, 1});
        QMatrix b = a;
        b(0, 1) = Quaternion{2};
        CHECK_FALSE(unitarily_similar(a, b, tol));
    }
    SUBCASE("diagonal order does not matter") {
        QMatrix a = QMatrix::diagonal({Quaternion{3}, Quaternion{1}});
        QMatrix b = QMatrix::diagonal({Quaternion{1}, Quaternion{3}});
        CHECK(unitarily_similar(a, b, tol));
    }
}

TEST_CASE("graph edges") {
    CHECK(graph(canonical_form(QMatrix::diagonal({Quaternion{3}, Quaternion{1}}), tol)).empty());
    {
        QMatrix a = upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{2}}});
        auto g = graph(canonical_form(a, tol));
        CHECK(g == std::vector<std::pair<int, int>>{{0, 1}});
    }
    {
        // equal eigenvalues force the edge (i, i+1)
        QMatrix a = upper({{5, 0}, {5, 0}}, {{0, 1, Quaternion::one()}});
        auto g = graph(canonical_form(a, tol));
        CHECK(g == std::vector<std::pair<int, int>>{{0, 1}});
    }
}

TEST_CASE("decomposition into unitarily indecomposable blocks") {
    SUBCASE("diagonal splits completely") {
        CanonicalResult r = canonical_form(QMatrix::diagonal({Quaternion{3}, Quaternion{1}}), tol);
        Decomposition d = decompose(r, tol);
        CHECK(d.permutation == std::vector<int>{0, 1});
        REQUIRE(d.blocks.size() == 2);
        CHECK(d.blocks[0] == QMatrix::diagonal({Quaternion{3}}));
        CHECK(d.blocks[1] == QMatrix::diagonal({Quaternion{1}}));
    }
    SUBCASE("a coupled pair stays together") {
        QMatrix a = upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{2}}});
        Decomposition d = decompose(canonical_form(a, tol), tol);
        CHECK(d.blocks.size() == 1);
    }
    SUBCASE("component vertices are gathered and sorted") {
        QMatrix a = upper({{0, 3}, {0, 2}, {0, 1}}, {{0, 2, Quaternion::one()}});
        Decomposition d = decompose(canonical_form(a, tol), tol);
        CHECK(d.permutation == std::vector<int>{0, 2, 1});
        REQUIRE(d.blocks.size() == 2);
        CHECK(d.blocks[0] == upper({{0, 3}, {0, 1}}, {{0, 1, Quaternion::one()}}));
        CHECK(d.blocks[1] == QMatrix::diagonal({Quaternion{0, 2, 0, 0}}));
        // each block re-canonicalizes to itself with a connected graph
        for (const QMatrix& block : d.blocks) {
            CanonicalResult rb = canonical_form(block, tol);
            CHECK(entry_gap(rb.canon, block) <= tol.eps_canon);
            CHECK(static_cast<int>(rb.edges.size()) == block.rows() - 1);
        }
    }
}

TEST_CASE("result serialization uses 1-based indices") {
    QMatrix a = upper({{3, 0}, {1, 0}}, {{0, 1, Quaternion{1, 1, 1, 1}}});
    CanonicalResult r = canonical_form(a, tol);
    std::string text = canonical_to_json(r);
    CHECK(text.find("\"edges\":[[1,2]]") != std::string::npos);
    CHECK(text.find("\"case\":\"1a\"") != std::string::npos);
}

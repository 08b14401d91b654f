#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "qmatrix.hpp"
#include "testkit.hpp"

using namespace qcf;

namespace {

QMatrix random_matrix(int m, int n, SeededRng& rng) {
    QMatrix a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = rng.normal_quaternion();
    return a;
}

} // namespace

TEST_CASE("adjoint of single entries follows the block formula") {
    SUBCASE("[j]") {
        CMatrix c = adjoint_complex(QMatrix::diagonal({Quaternion::j()}));
        CHECK(c(0, 0) == Complex{0, 0});
        CHECK(c(0, 1) == Complex{1, 0});
        CHECK(c(1, 0) == Complex{-1, 0});
        CHECK(c(1, 1) == Complex{0, 0});
    }
    SUBCASE("identity maps to identity") {
        CMatrix c = adjoint_complex(QMatrix::identity(3));
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(c(i, j) == (i == j ? Complex{1, 0} : Complex{0, 0}));
    }
    SUBCASE("[i]") {
        CMatrix c = adjoint_complex(QMatrix::diagonal({Quaternion::i()}));
        CHECK(c(0, 0) == Complex{0, 1});
        CHECK(c(0, 1) == Complex{0, 0});
        CHECK(c(1, 0) == Complex{0, 0});
        CHECK(c(1, 1) == Complex{0, -1});
    }
}

TEST_CASE("adjoint is a *-homomorphism") {
    SeededRng rng(21);
    for (int t = 0; t < 50; ++t) {
        QMatrix a = random_matrix(4, 4, rng), b = random_matrix(4, 4, rng);
        CMatrix lhs = adjoint_complex(a * b);
        CMatrix rhs = adjoint_complex(a) * adjoint_complex(b);
        CHECK((lhs - rhs).frobenius() <= 1e-10 * (1.0 + rhs.frobenius()));
        CMatrix star = adjoint_complex(a.conj_transpose());
        CMatrix starred = adjoint_complex(a).conj_transpose();
        CHECK((star - starred).frobenius() == 0.0);
    }
}

TEST_CASE("conjugate transpose laws") {
    SeededRng rng(23);
    QMatrix a = random_matrix(3, 4, rng), b = random_matrix(4, 2, rng);
    CHECK(a.conj_transpose().conj_transpose() == a);
    QMatrix lhs = (a * b).conj_transpose();
    QMatrix rhs = b.conj_transpose() * a.conj_transpose();
    CHECK(residual(lhs, rhs) <= 1e-13 * (1.0 + rhs.frobenius()));
}

TEST_CASE("matrix JSON round trip is bitwise") {
    SeededRng rng(25);
    for (int t = 0; t < 20; ++t) {
        QMatrix a = random_matrix(1 + t % 4, 1 + (t / 2) % 4, rng);
        QMatrix back = matrix_from_json(matrix_to_json(a));
        CHECK(back == a);
    }
}

TEST_CASE("matrix JSON rejects malformed input") {
    CHECK_THROWS_AS(matrix_from_json("not json"), Error);
    CHECK_THROWS_AS(matrix_from_json("{\"rows\": 1}"), Error);
    CHECK_THROWS_AS(matrix_from_json("{\"rows\": 1, \"cols\": 1, \"entries\": [[[1,2,3]]]}"), Error);
    CHECK_THROWS_AS(matrix_from_json("{\"rows\": 2, \"cols\": 1, \"entries\": [[[1,2,3,4]]]}"), Error);
    CHECK_THROWS_AS(matrix_from_json("{\"rows\": 0, \"cols\": 0, \"entries\": []}"), Error);
    try {
        matrix_from_json("[]");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse);
    }
}

TEST_CASE("quaternion rendering") {
    CHECK(format_quaternion(Quaternion{1, -2, 0, 0.5}) == "1 - 2i + 0.5k");
    CHECK(format_quaternion(Quaternion{}) == "0");
    CHECK(format_quaternion(Quaternion{0, 0, 1, 0}) == "1j");
}

#include <catch2/catch_amalgamated.hpp>

#include "parsum/matrix.hpp"

using namespace parsum;

TEST_CASE("SymMatrix symmetrizes exactly on construction", "[matrix]") {
    Matrix<double> m(3);
    m(0, 1) = 1.0;
    m(1, 0) = 2.0;
    m(0, 2) = 0.1;
    m(2, 0) = 0.3;
    m(1, 1) = 5.0;
    const SymMatrix<double> s(m);
    CHECK(s(0, 1) == 1.5);
    CHECK(s(1, 0) == 1.5);
    CHECK(s(0, 2) == s(2, 0));
    CHECK(s(1, 1) == 5.0);
}

TEST_CASE("zero dimension and ragged rows are rejected", "[matrix]") {
    CHECK_THROWS_AS(Matrix<double>(0), DomainError);
    CHECK_THROWS_AS(Vector<double>(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(Matrix<double>::from_rows({{1.0, 2.0}, {3.0}}), DomainError);
}

TEST_CASE("products and sums", "[matrix]") {
    const auto a = Matrix<double>::from_rows({{1, 2}, {3, 4}});
    const auto b = Matrix<double>::from_rows({{0, 1}, {1, 0}});
    const auto ab = a * b;
    CHECK(ab == Matrix<double>::from_rows({{2, 1}, {4, 3}}));
    CHECK(a * Matrix<double>::identity(2) == a);
    CHECK(a.transposed() == Matrix<double>::from_rows({{1, 3}, {2, 4}}));

    const auto s = SymMatrix<double>::from_rows({{2, 1}, {1, 3}});
    const SymMatrix<double> s2 = s + s;
    CHECK(s2(0, 1) == 2.0);
    CHECK((2.0 * s)(1, 1) == 6.0);
    CHECK(max_abs_diff(s * Matrix<double>::identity(2), s) == 0.0);

    const Vector<double> x(std::vector<double>{1.0, -1.0});
    const auto sx = s * x;
    CHECK(sx[0] == 1.0);
    CHECK(sx[1] == -2.0);
    CHECK(quadratic_form(s, x) == 3.0);
    CHECK_THROWS_AS(s * Vector<double>(3), DomainError);
    CHECK_THROWS_AS(a * Matrix<double>(3), DomainError);
}

TEST_CASE("cast round-trips through long double", "[matrix]") {
    const auto s = SymMatrix<double>::from_rows({{0.1, 0.2}, {0.2, 0.3}});
    CHECK(s.cast<long double>().cast<double>() == s);
}

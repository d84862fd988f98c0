#include <doctest.h>

#include <cmath>

#include "stbc/complex_matrix.hpp"
#include "stbc/errors.hpp"
#include "stbc/rng.hpp"

using namespace stbc;

namespace {

ComplexMatrix random_complex(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.cgaussian();
    return m;
}

// exactly skew-symmetric by construction
RealMatrix random_skew(std::size_t n, Rng& rng) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = rng.gaussian();
            m(j, i) = -m(i, j);
        }
    }
    return m;
}

} // namespace

TEST_SUITE("matcore") {

TEST_CASE("hermitian on fixed inputs") {
    CHECK(hermitian(ComplexMatrix::identity(2)) == ComplexMatrix::identity(2));

    const ComplexMatrix pure_j(1, 1, {cplx(0, 1)});
    CHECK(hermitian(pure_j) == ComplexMatrix(1, 1, {cplx(0, -1)}));

    const ComplexMatrix m(2, 2, {cplx(1, 1), cplx(2, 0), cplx(0, 0), cplx(3, -1)});
    const ComplexMatrix expected(2, 2, {cplx(1, -1), cplx(0, 0), cplx(2, 0), cplx(3, 1)});
    CHECK(hermitian(m) == expected);
}

TEST_CASE("hermitian is an involution") {
    Rng rng(11);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t r = 1 + rng.next_u64() % 6, c = 1 + rng.next_u64() % 6;
        const ComplexMatrix m = random_complex(r, c, rng);
        CHECK(hermitian(hermitian(m)) == m);
    }
}

TEST_CASE("is_skew_symmetric basics") {
    CHECK(is_skew_symmetric(RealMatrix(2, 2, {0, 1, -1, 0}), 0.0));
    CHECK_FALSE(is_skew_symmetric(RealMatrix::identity(2), 1e-12));
    CHECK_THROWS_AS(is_skew_symmetric(RealMatrix(2, 3), 1e-12), ShapeError);
}

TEST_CASE("skew-symmetric quadratic forms annihilate") {
    Rng rng(17);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 2 + rng.next_u64() % 7;
        const RealMatrix m = random_skew(n, rng);
        REQUIRE(is_skew_symmetric(m, 1e-12));
        std::vector<double> v(n);
        double norm2 = 0.0;
        for (double& x : v) {
            x = rng.gaussian();
            norm2 += x * x;
        }
        const std::vector<double> mv = m.mul(v);
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) q += v[i] * mv[i];
        CHECK(std::abs(q) <= 1e-9 * norm2 * m.frobenius_norm());
    }
}

TEST_CASE("real_expand_a fixed patterns") {
    CHECK(real_expand_a(ComplexMatrix::identity(2)) == RealMatrix::identity(4));

    CHECK(real_expand_a(ComplexMatrix(1, 1, {cplx(0, 1)})) == RealMatrix(2, 2, {0, -1, 1, 0}));

    // Alamouti A2: the same real pattern in both diagonal blocks
    const ComplexMatrix a2(2, 2, {0, 1, -1, 0});
    const RealMatrix expected(4, 4,
                              {0, 1, 0, 0,
                               -1, 0, 0, 0,
                               0, 0, 0, 1,
                               0, 0, -1, 0});
    CHECK(real_expand_a(a2) == expected);
}

TEST_CASE("real_expand_b fixed patterns") {
    const RealMatrix ident_expanded(4, 4,
                                    {0, 0, -1, 0,
                                     0, 0, 0, -1,
                                     1, 0, 0, 0,
                                     0, 1, 0, 0});
    CHECK(real_expand_b(ComplexMatrix::identity(2)) == ident_expanded);

    CHECK(real_expand_b(ComplexMatrix(1, 1, {cplx(0, 1)})) == RealMatrix(2, 2, {-1, 0, 0, -1}));

    // Alamouti B1 = diag(1,-1): [[0, -diag],[diag, 0]]
    const ComplexMatrix b1(2, 2, {1, 0, 0, -1});
    const RealMatrix expected(4, 4,
                              {0, 0, -1, 0,
                               0, 0, 0, 1,
                               1, 0, 0, 0,
                               0, -1, 0, 0});
    CHECK(real_expand_b(b1) == expected);
}

TEST_CASE("real expansions are linear over the reals") {
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t r = 1 + rng.next_u64() % 4, c = 1 + rng.next_u64() % 4;
        const ComplexMatrix x = random_complex(r, c, rng);
        const ComplexMatrix y = random_complex(r, c, rng);
        const double a = rng.gaussian(), b = rng.gaussian();
        const ComplexMatrix comb = x * cplx(a, 0) + y * cplx(b, 0);
        const RealMatrix lhs_a = real_expand_a(comb);
        const RealMatrix rhs_a = real_expand_a(x) * a + real_expand_a(y) * b;
        CHECK((lhs_a - rhs_a).max_abs() <= 1e-12);
        const RealMatrix lhs_b = real_expand_b(comb);
        const RealMatrix rhs_b = real_expand_b(x) * a + real_expand_b(y) * b;
        CHECK((lhs_b - rhs_b).max_abs() <= 1e-12);
    }
}

TEST_CASE("gram_det fixed values") {
    CHECK(gram_det(ComplexMatrix(3, 2)) == 0.0);
    CHECK(gram_det(ComplexMatrix::identity(4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gram_det(ComplexMatrix::identity(3) * cplx(2, 0)) ==
          doctest::Approx(64.0).epsilon(1e-12));
}

TEST_CASE("determinant scaling law") {
    Rng rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t n = 1 + rng.next_u64() % 4;
        const std::size_t t = n + rng.next_u64() % 3;
        const ComplexMatrix d = random_complex(t, n, rng);
        const double c = 0.25 + rng.uniform() * 3.0;
        const double base = gram_det(d);
        const double scaled = gram_det(d * cplx(c, 0));
        CHECK(scaled == doctest::Approx(std::pow(c, 2.0 * static_cast<double>(n)) * base)
                            .epsilon(1e-9));
    }
}

TEST_CASE("det_lu on a known matrix") {
    const ComplexMatrix m(2, 2, {1, 2, 3, 4});
    CHECK(det_lu(m).real() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(det_lu(m).imag() == doctest::Approx(0.0));
    CHECK_THROWS_AS(det_lu(ComplexMatrix(2, 3)), ShapeError);
}

TEST_CASE("singular values and rank") {
    ComplexMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = cplx(0, 2);
    d(2, 2) = -1.0;
    const std::vector<double> sv = singular_values(d);
    REQUIRE(sv.size() == 3);
    CHECK(sv[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sv[2] == doctest::Approx(1.0).epsilon(1e-12));

    CHECK(rank(ComplexMatrix::identity(3)) == 3);
    CHECK(rank(ComplexMatrix(3, 3)) == 0);

    // rank-1 outer product
    Rng rng(37);
    ComplexMatrix outer(4, 3);
    std::vector<cplx> u(4), v(3);
    for (auto& x : u) x = rng.cgaussian();
    for (auto& x : v) x = rng.cgaussian();
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 3; ++j) outer(i, j) = u[i] * v[j];
    CHECK(rank(outer) == 1);
}

TEST_CASE("singular values match gram determinant") {
    Rng rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 1 + rng.next_u64() % 4;
        const ComplexMatrix d = random_complex(n + 1, n, rng);
        const std::vector<double> sv = singular_values(d);
        double prod = 1.0;
        for (double s : sv) prod *= s * s;
        CHECK(gram_det(d) == doctest::Approx(prod).epsilon(1e-9));
    }
}

TEST_CASE("complex entry parsing forms") {
    CHECK(parse_complex_entry("3") == cplx(3, 0));
    CHECK(parse_complex_entry("-2.5") == cplx(-2.5, 0));
    CHECK(parse_complex_entry("2i") == cplx(0, 2));
    CHECK(parse_complex_entry("-0.5i") == cplx(0, -0.5));
    CHECK(parse_complex_entry("1+2i") == cplx(1, 2));
    CHECK(parse_complex_entry("1-2i") == cplx(1, -2));
    CHECK(parse_complex_entry("i") == cplx(0, 1));
    CHECK(parse_complex_entry("-i") == cplx(0, -1));
    CHECK(parse_complex_entry("1e-3+2e-4i") == cplx(1e-3, 2e-4));
    CHECK_THROWS_AS(parse_complex_entry("abc"), DomainError);
    CHECK_THROWS_AS(parse_complex_entry(""), DomainError);
    CHECK_THROWS_AS(parse_complex_entry("1+2"), DomainError);
}

TEST_CASE("matrix literal round-trip is bit-exact") {
    Rng rng(43);
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t r = 1 + rng.next_u64() % 5, c = 1 + rng.next_u64() % 5;
        ComplexMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                // dyadic rationals k / 2^e plus a sprinkling of irrationals
                const double re = static_cast<double>(static_cast<int>(rng.next_u64() % 64) - 32) /
                                  static_cast<double>(1 << (rng.next_u64() % 8));
                const double im = (rep % 3 == 0) ? std::sqrt(2.0) * re : -re / 4.0;
                m(i, j) = {re, im};
            }
        }
        CHECK(parse_matrix(format_matrix(m)) == m);
    }
}

TEST_CASE("parse_matrix validates shape") {
    CHECK_THROWS_AS(parse_matrix("1 2\n3"), ShapeError);
    CHECK_THROWS_AS(parse_matrix("   \n  "), ShapeError);
    const ComplexMatrix m = parse_matrix("1+1i 0\n0 3-1i\n");
    CHECK(m.rows() == 2);
    CHECK(m(1, 1) == cplx(3, -1));
}

TEST_CASE("shape errors on mismatched arithmetic") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2) + ComplexMatrix(2, 3), ShapeError);
    CHECK_THROWS_AS(ComplexMatrix(2, 2) * ComplexMatrix(3, 2), ShapeError);
    CHECK_THROWS_AS(RealMatrix(2, 2).mul(std::vector<double>{1, 2, 3}), ShapeError);
}

} // TEST_SUITE

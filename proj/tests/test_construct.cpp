#include <doctest.h>

#include "stbc/construct.hpp"
#include "stbc/errors.hpp"
#include "stbc/rng.hpp"

using namespace stbc;

namespace {

const cplx J(0.0, 1.0);

// independent rebuild of the four mapping rules for comparison
ComplexMatrix embed(const ComplexMatrix& m, bool antidiagonal, cplx scale) {
    const std::size_t t = m.rows(), n = m.cols();
    ComplexMatrix out(2 * t, 2 * n);
    for (std::size_t i = 0; i < t; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cplx v = scale * m(i, j);
            if (antidiagonal) {
                out(i, n + j) = v;
                out(t + i, j) = v;
            } else {
                out(i, j) = v;
                out(t + i, n + j) = v;
            }
        }
    }
    return out;
}

SymbolVector random_symbols(std::size_t k, Rng& rng) {
    SymbolVector x(k);
    for (auto& v : x) v = rng.cgaussian();
    return x;
}

} // namespace

TEST_SUITE("construct") {

TEST_CASE("alamouti codeword matches [[x1,x2],[-x2*,x1*]]") {
    const DispersionSet code = alamouti();
    Rng rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        const SymbolVector x = random_symbols(2, rng);
        const ComplexMatrix g = codeword(code, x);
        CHECK(g(0, 0) == x[0]);
        CHECK(g(0, 1) == x[1]);
        CHECK(g(1, 0) == -std::conj(x[1]));
        CHECK(g(1, 1) == std::conj(x[0]));
    }
    CHECK(check_ostbc(code, 1e-12).classification == Classification::orthogonal);
    CHECK(code.rate() == Rational{1, 1});
}

TEST_CASE("rate-3/4 seed is a clean orthogonal design") {
    const DispersionSet seed = ostbc_rate34_4tx();
    CHECK(seed.n_tx() == 4);
    CHECK(seed.span() == 4);
    CHECK(seed.n_symbols() == 3);
    const StructureReport rep = check_ostbc(seed, 1e-12);
    CHECK(rep.classification == Classification::orthogonal);
    CHECK(seed.rate() == Rational{3, 4});

    const DispersionSet doubled = theorem3_map(seed);
    CHECK(doubled.n_tx() == 8);
    CHECK(doubled.span() == 8); // twice the seed span
    CHECK(doubled.n_symbols() == 6);
    CHECK(check_mdcqo(doubled, 1e-12).classification ==
          Classification::mdc_quasi_orthogonal);
}

TEST_CASE("rate-3/4 seed has no identically-zero codeword entries") {
    const DispersionSet seed = ostbc_rate34_4tx();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            bool touched = false;
            for (const auto& pr : seed.pairs())
                if (pr.a(i, j) != 0.0 || pr.b(i, j) != 0.0) touched = true;
            CHECK(touched);
        }
    }
}

TEST_CASE("theorem3 mapping rules hold bit-exactly") {
    for (const DispersionSet& seed : {alamouti(), ostbc_rate34_4tx()}) {
        const DispersionSet out = theorem3_map(seed);
        const std::size_t k = seed.n_symbols();
        REQUIRE(out.n_symbols() == 2 * k);
        for (std::size_t q = 0; q < k; ++q) {
            CHECK(out.pair(q).a == embed(seed.pair(q).a, false, 1.0));      // rule 1
            CHECK(out.pair(q).b == embed(seed.pair(q).a, true, J));         // rule 2
            CHECK(out.pair(k + q).a == embed(seed.pair(q).b, false, J));    // rule 3
            CHECK(out.pair(k + q).b == embed(seed.pair(q).b, true, 1.0));   // rule 4
        }
    }
}

TEST_CASE("theorem3 output codeword reproduces the published 4-antenna pattern") {
    const DispersionSet code = theorem3_map(alamouti());
    // coefficient pattern of each stacked real symbol, transcribed entry by
    // entry from the published 4x4 codeword
    const cplx e0(0, 0), e1(1, 0), em(-1, 0);
    const ComplexMatrix px1r(4, 4, {e1, e0, e0, e0, e0, e1, e0, e0,
                                    e0, e0, e1, e0, e0, e0, e0, e1});
    const ComplexMatrix px1i(4, 4, {e0, e0, em, e0, e0, e0, e0, em,
                                    em, e0, e0, e0, e0, em, e0, e0});
    const ComplexMatrix px2r(4, 4, {e0, e1, e0, e0, em, e0, e0, e0,
                                    e0, e0, e0, e1, e0, e0, em, e0});
    const ComplexMatrix px2i(4, 4, {e0, e0, e0, em, e0, e0, e1, e0,
                                    e0, em, e0, e0, e1, e0, e0, e0});
    const ComplexMatrix px3r(4, 4, {J, e0, e0, e0, e0, -J, e0, e0,
                                    e0, e0, J, e0, e0, e0, e0, -J});
    const ComplexMatrix px3i(4, 4, {e0, e0, J, e0, e0, e0, e0, -J,
                                    J, e0, e0, e0, e0, -J, e0, e0});
    const ComplexMatrix px4r(4, 4, {e0, J, e0, e0, J, e0, e0, e0,
                                    e0, e0, e0, J, e0, e0, J, e0});
    const ComplexMatrix px4i(4, 4, {e0, e0, e0, J, e0, e0, J, e0,
                                    e0, J, e0, e0, J, e0, e0, e0});

    const ComplexMatrix* expected_r[4] = {&px1r, &px2r, &px3r, &px4r};
    const ComplexMatrix* expected_i[4] = {&px1i, &px2i, &px3i, &px4i};
    for (std::size_t q = 0; q < 4; ++q) {
        SymbolVector basis(4, cplx(0, 0));
        basis[q] = cplx(1, 0);
        CHECK(codeword(code, basis) == *expected_r[q]);
        basis[q] = cplx(0, 1);
        CHECK(codeword(code, basis) == *expected_i[q]);
    }
}

TEST_CASE("theorem3 preserves the code rate") {
    CHECK(theorem3_map(alamouti()).rate() == alamouti().rate());
    CHECK(theorem3_map(ostbc_rate34_4tx()).rate() == ostbc_rate34_4tx().rate());
}

TEST_CASE("theorem3 rejects non-orthogonal seeds") {
    const DispersionSet not_orthogonal = theorem3_map(alamouti());
    CHECK_THROWS_WITH_AS(theorem3_map(not_orthogonal),
                         doctest::Contains("cross_ab"), StructureError);
}

TEST_CASE("column removal bookkeeping") {
    const DispersionSet code = theorem3_map(alamouti());
    const DispersionSet mdc3 = remove_columns(code, {4});
    CHECK(mdc3.n_tx() == 3);
    CHECK(mdc3.span() == 4);
    CHECK(mdc3.n_symbols() == 4);
    // removed column was the last one; survivors match bit-exactly
    for (std::size_t q = 0; q < 4; ++q)
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(mdc3.pair(q).a(i, j) == code.pair(q).a(i, j));

    const DispersionSet mdc8 = theorem3_map(ostbc_rate34_4tx());
    const DispersionSet mdc5 = remove_columns(mdc8, {1, 7, 8});
    CHECK(mdc5.n_tx() == 5);
    CHECK(mdc5.rate() == Rational{3, 4});

    // complementary removals partition the antennas
    const DispersionSet left = remove_columns(code, {3, 4});
    const DispersionSet right = remove_columns(code, {1, 2});
    CHECK(left.n_tx() + right.n_tx() == code.n_tx());

    CHECK_THROWS_AS(remove_columns(code, {}), DomainError);
    CHECK_THROWS_AS(remove_columns(code, {1, 2, 3, 4}), DomainError);
    CHECK_THROWS_AS(remove_columns(code, {5}), DomainError);
    CHECK_THROWS_AS(remove_columns(code, {0}), DomainError);
}

TEST_CASE("column-removal closure over all small removals") {
    const DispersionSet mdc4 = theorem3_map(alamouti());
    const DispersionSet mdc8 = theorem3_map(ostbc_rate34_4tx());
    for (const DispersionSet* code : {&mdc4, &mdc8}) {
        const std::size_t n = code->n_tx();
        for (std::size_t c1 = 1; c1 <= n; ++c1) {
            CHECK(check_mdcqo(remove_columns(*code, {c1}), 1e-12).classification ==
                  Classification::mdc_quasi_orthogonal);
            for (std::size_t c2 = c1 + 1; c2 <= n; ++c2) {
                CHECK(check_mdcqo(remove_columns(*code, {c1, c2}), 1e-12).classification ==
                      Classification::mdc_quasi_orthogonal);
            }
        }
    }
}

TEST_CASE("codeword basics") {
    const DispersionSet code = theorem3_map(alamouti());
    CHECK(codeword(code, SymbolVector(4, cplx(0, 0))) == ComplexMatrix(4, 4));

    // alamouti with x = (1, j)
    const ComplexMatrix g = codeword(alamouti(), {cplx(1, 0), cplx(0, 1)});
    CHECK(g == ComplexMatrix(2, 2, {cplx(1, 0), cplx(0, 1), cplx(0, 1), cplx(1, 0)}));

    // first real symbol of the 4-antenna code lands on the diagonal
    const ComplexMatrix g1 = codeword(code, {cplx(1, 0), 0, 0, 0});
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(g1(i, j) == (i == j ? cplx(1, 0) : cplx(0, 0)));

    CHECK_THROWS_AS(codeword(code, SymbolVector(3)), ShapeError);
}

TEST_CASE("codeword is real-linear in the stacked symbols") {
    Rng rng(7);
    const DispersionSet code = theorem3_map(alamouti());
    for (int rep = 0; rep < 25; ++rep) {
        const SymbolVector x = random_symbols(4, rng);
        const SymbolVector y = random_symbols(4, rng);
        const double a = rng.gaussian(), b = rng.gaussian();
        SymbolVector comb(4);
        for (std::size_t q = 0; q < 4; ++q) comb[q] = a * x[q] + b * y[q];
        const ComplexMatrix lhs = codeword(code, comb);
        const ComplexMatrix rhs = codeword(code, x) * cplx(a, 0) + codeword(code, y) * cplx(b, 0);
        CHECK((lhs - rhs).max_abs() <= 1e-12);
    }
}

TEST_CASE("maximum rate formula") {
    CHECK(max_rate(3) == Rational{1, 1});
    CHECK(max_rate(4) == Rational{1, 1});
    CHECK(max_rate(5) == Rational{3, 4});
    CHECK(max_rate(8) == Rational{3, 4});
    CHECK(max_rate(9) == Rational{2, 3});
    CHECK(max_rate(12) == Rational{2, 3});
    CHECK_THROWS_AS(max_rate(2), DomainError);
}

TEST_CASE("builtin families") {
    CHECK(builtin_code("alamouti").n_tx() == 2);
    CHECK(builtin_code("mdc4").n_tx() == 4);
    CHECK(builtin_code("mdc8").n_tx() == 8);
    CHECK(builtin_code("ostbc34").n_symbols() == 3);
    CHECK_THROWS_AS(builtin_code("nope"), ConfigError);
}

} // TEST_SUITE

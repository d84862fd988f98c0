#include <doctest.h>

#include <cmath>

#include "stbc/chansim.hpp"
#include "stbc/errors.hpp"
#include "stbc/modem.hpp"

using namespace stbc;

namespace {

SymbolVector random_symbols(std::size_t k, Rng& rng) {
    SymbolVector x(k);
    for (auto& v : x) v = rng.cgaussian();
    return x;
}

std::vector<DispersionSet> all_families() {
    const DispersionSet mdc4 = theorem3_map(alamouti());
    const DispersionSet mdc8 = theorem3_map(ostbc_rate34_4tx());
    return {alamouti(),
            ostbc_rate34_4tx(),
            mdc4,
            remove_columns(mdc4, {4}),
            mdc8,
            remove_columns(mdc8, {1, 7, 8})};
}

} // namespace

TEST_SUITE("chansim") {

TEST_CASE("rayleigh moments") {
    Rng rng(101);
    const std::size_t n = 1000000;
    double e2 = 0.0, vr = 0.0, vi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const cplx h = rng.cgaussian();
        e2 += std::norm(h);
        vr += h.real() * h.real();
        vi += h.imag() * h.imag();
    }
    CHECK(e2 / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(vr / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(vi / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("fixed seed reproduces the realization") {
    Rng a(7), b(7);
    const ChannelRealization h1 = rayleigh(4, 2, a);
    const ChannelRealization h2 = rayleigh(4, 2, b);
    CHECK(h1.coefficients == h2.coefficients);
    CHECK(h1.coefficients.rows() == 4);
    CHECK(h1.coefficients.cols() == 2);
}

TEST_CASE("equivalent channel reproduces the codeword model") {
    // H * x_stacked must equal the restacked codeword * channel product for
    // every code family; this ties the real expansions, the codeword map and
    // the channel stacking together
    Rng rng(11);
    for (const DispersionSet& code : all_families()) {
        for (std::size_t n_rx : {std::size_t{1}, std::size_t{2}}) {
            for (int rep = 0; rep < 170; ++rep) {
                const ChannelRealization h = rayleigh(code.n_tx(), n_rx, rng);
                const SymbolVector x = random_symbols(code.n_symbols(), rng);
                const std::vector<double> lhs =
                    equivalent_channel(code, h).mul(stack_symbols(x));
                const std::vector<double> rhs = stack_real(codeword(code, x) * h.coefficients);
                REQUIRE(lhs.size() == rhs.size());
                for (std::size_t i = 0; i < lhs.size(); ++i)
                    CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("alamouti matched-filter identity") {
    Rng rng(13);
    const DispersionSet code = alamouti();
    for (int rep = 0; rep < 100; ++rep) {
        const ChannelRealization h = rayleigh(2, 1, rng);
        const RealMatrix heq = equivalent_channel(code, h);
        const RealMatrix gram = heq.gram();
        const double gain = std::norm(h.coefficients(0, 0)) + std::norm(h.coefficients(1, 0));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                const double expect = (i == j) ? gain : 0.0;
                CHECK(gram(i, j) == doctest::Approx(expect).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("zero channel gives zero equivalent matrix") {
    const ChannelRealization h{ComplexMatrix(4, 1)};
    CHECK(equivalent_channel(theorem3_map(alamouti()), h).max_abs() == 0.0);
}

TEST_CASE("channel shape mismatch") {
    Rng rng(15);
    const ChannelRealization h = rayleigh(3, 1, rng);
    CHECK_THROWS_AS(equivalent_channel(alamouti(), h), ShapeError);
}

TEST_CASE("restacking is a bijection") {
    Rng rng(17);
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t t = 1 + rng.next_u64() % 6, n_rx = 1 + rng.next_u64() % 3;
        ComplexMatrix samples(t, n_rx);
        for (std::size_t i = 0; i < t; ++i)
            for (std::size_t r = 0; r < n_rx; ++r) samples(i, r) = rng.cgaussian();
        CHECK(unstack_real(stack_real(samples), t, n_rx) == samples);
    }
    const SymbolVector x = random_symbols(5, rng);
    CHECK(unstack_symbols(stack_symbols(x)) == x);
}

TEST_CASE("noiseless transmit is the scaled linear model") {
    Rng rng(19);
    const DispersionSet code = theorem3_map(alamouti());
    for (int rep = 0; rep < 20; ++rep) {
        const ChannelRealization h = rayleigh(4, 1, rng);
        const SymbolVector x = random_symbols(4, rng);
        const double rho = 0.5 + rng.uniform() * 20.0;
        const ReceivedBlock r = transmit_noiseless(code, x, h, rho);
        const std::vector<double> expect = equivalent_channel(code, h).mul(stack_symbols(x));
        const double amp = std::sqrt(rho / 4.0);
        REQUIRE(r.stacked_real.size() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(r.stacked_real[i] == doctest::Approx(amp * expect[i]).epsilon(1e-12));
        CHECK(r.samples == unstack_real(r.stacked_real, code.span(), 1));
    }
}

TEST_CASE("transmit rejects non-positive snr") {
    Rng rng(21);
    const ChannelRealization h = rayleigh(2, 1, rng);
    CHECK_THROWS_AS(transmit(alamouti(), {cplx(1, 0), cplx(0, 1)}, h, 0.0, rng), DomainError);
    CHECK_THROWS_AS(transmit_noiseless(alamouti(), {cplx(1, 0), cplx(0, 1)}, h, -3.0),
                    DomainError);
}

TEST_CASE("hot-path transmit matches the public model") {
    const DispersionSet code = theorem3_map(alamouti());
    const ExpandedCode expanded(code);
    Rng channel_rng(23);
    const ChannelRealization h = rayleigh(4, 1, channel_rng);
    const SymbolVector x = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    Rng a(31), b(31);
    const ReceivedBlock r1 = transmit(code, x, h, 10.0, a);
    const ReceivedBlock r2 =
        transmit_through(expanded.equivalent_channel(h), x, 4, 4, 1, 10.0, &b);
    CHECK(r1.stacked_real == r2.stacked_real);
    CHECK(r1.samples == r2.samples);
}

TEST_CASE("empirical per-receive-antenna snr") {
    Rng rng(27);
    const DispersionSet code = theorem3_map(alamouti());
    const Constellation c = Constellation::square_qam(4, QamNorm::unit_energy);
    const double rho = 10.0;
    double signal = 0.0;
    std::size_t samples = 0;
    for (int block = 0; block < 100000; ++block) {
        const ChannelRealization h = rayleigh(4, 1, rng);
        SymbolVector x(4);
        for (auto& v : x) v = c.point(rng.next_u64() & 3);
        const ReceivedBlock r = transmit_noiseless(code, x, h, rho);
        for (std::size_t i = 0; i < r.samples.rows(); ++i) signal += std::norm(r.samples(i, 0));
        samples += r.samples.rows();
    }
    // noise power is 1 per complex sample, so signal power per sample is the SNR
    CHECK(signal / static_cast<double>(samples) == doctest::Approx(rho).epsilon(0.03));
}

} // TEST_SUITE

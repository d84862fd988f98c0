#include "stbc/chansim.hpp"

#include <cmath>

#include "stbc/errors.hpp"

namespace stbc {

ChannelRealization rayleigh(std::size_t n_tx, std::size_t n_rx, Rng& rng) {
    ComplexMatrix h(n_tx, n_rx);
    for (std::size_t i = 0; i < n_tx; ++i)
        for (std::size_t r = 0; r < n_rx; ++r) h(i, r) = rng.cgaussian();
    return {h};
}

ExpandedCode::ExpandedCode(const DispersionSet& code)
    : n_tx_(code.n_tx()), span_(code.span()) {
    exp_a_.reserve(code.n_symbols());
    exp_b_.reserve(code.n_symbols());
    for (const auto& pr : code.pairs()) {
        exp_a_.push_back(real_expand_a(pr.a));
        exp_b_.push_back(real_expand_b(pr.b));
    }
}

RealMatrix ExpandedCode::equivalent_channel(const ChannelRealization& h) const {
    const ComplexMatrix& coef = h.coefficients;
    if (coef.rows() != n_tx_) {
        throw ShapeError("equivalent_channel: channel has " + std::to_string(coef.rows()) +
                         " tx rows, code expects " + std::to_string(n_tx_));
    }
    const std::size_t n_rx = coef.cols();
    const std::size_t k = n_symbols();
    RealMatrix heq(2 * span_ * n_rx, 2 * k);
    std::vector<double> hbar(2 * n_tx_);
    for (std::size_t r = 0; r < n_rx; ++r) {
        for (std::size_t i = 0; i < n_tx_; ++i) {
            hbar[i] = coef(i, r).real();
            hbar[n_tx_ + i] = coef(i, r).imag();
        }
        const std::size_t row0 = 2 * span_ * r;
        for (std::size_t q = 0; q < k; ++q) {
            const std::vector<double> ca = exp_a_[q].mul(hbar);
            const std::vector<double> cb = exp_b_[q].mul(hbar);
            for (std::size_t i = 0; i < 2 * span_; ++i) {
                heq(row0 + i, 2 * q) = ca[i];
                heq(row0 + i, 2 * q + 1) = cb[i];
            }
        }
    }
    return heq;
}

RealMatrix equivalent_channel(const DispersionSet& code, const ChannelRealization& h) {
    return ExpandedCode(code).equivalent_channel(h);
}

std::vector<double> stack_real(const ComplexMatrix& samples) {
    const std::size_t t = samples.rows(), n_rx = samples.cols();
    std::vector<double> out(2 * t * n_rx);
    for (std::size_t r = 0; r < n_rx; ++r) {
        for (std::size_t i = 0; i < t; ++i) {
            out[2 * t * r + i] = samples(i, r).real();
            out[2 * t * r + t + i] = samples(i, r).imag();
        }
    }
    return out;
}

ComplexMatrix unstack_real(const std::vector<double>& v, std::size_t span, std::size_t n_rx) {
    if (v.size() != 2 * span * n_rx) {
        throw ShapeError("unstack_real: vector length " + std::to_string(v.size()) +
                         " does not match 2*" + std::to_string(span) + "*" +
                         std::to_string(n_rx));
    }
    ComplexMatrix out(span, n_rx);
    for (std::size_t r = 0; r < n_rx; ++r)
        for (std::size_t i = 0; i < span; ++i)
            out(i, r) = {v[2 * span * r + i], v[2 * span * r + span + i]};
    return out;
}

std::vector<double> stack_symbols(const SymbolVector& x) {
    std::vector<double> out(2 * x.size());
    for (std::size_t q = 0; q < x.size(); ++q) {
        out[2 * q] = x[q].real();
        out[2 * q + 1] = x[q].imag();
    }
    return out;
}

SymbolVector unstack_symbols(const std::vector<double>& v) {
    if (v.size() % 2 != 0) throw ShapeError("unstack_symbols: odd-length vector");
    SymbolVector out(v.size() / 2);
    for (std::size_t q = 0; q < out.size(); ++q) out[q] = {v[2 * q], v[2 * q + 1]};
    return out;
}

ReceivedBlock transmit_through(const RealMatrix& heq, const SymbolVector& x, std::size_t n_tx,
                               std::size_t span, std::size_t n_rx, double rho, Rng* rng) {
    if (rho <= 0.0) throw DomainError("transmit: rho must be positive");
    std::vector<double> r = heq.mul(stack_symbols(x));
    const double amp = std::sqrt(rho / static_cast<double>(n_tx));
    constexpr double noise_sigma = 0.70710678118654752440; // sqrt(1/2) per real dimension
    for (double& v : r) {
        v *= amp;
        if (rng) v += noise_sigma * rng->gaussian();
    }
    ReceivedBlock block;
    block.samples = unstack_real(r, span, n_rx);
    block.stacked_real = std::move(r);
    return block;
}

ReceivedBlock transmit(const DispersionSet& code, const SymbolVector& x,
                       const ChannelRealization& h, double rho, Rng& rng) {
    return transmit_through(equivalent_channel(code, h), x, code.n_tx(), code.span(),
                            h.coefficients.cols(), rho, &rng);
}

ReceivedBlock transmit_noiseless(const DispersionSet& code, const SymbolVector& x,
                                 const ChannelRealization& h, double rho) {
    return transmit_through(equivalent_channel(code, h), x, code.n_tx(), code.span(),
                            h.coefficients.cols(), rho, nullptr);
}

} // namespace stbc

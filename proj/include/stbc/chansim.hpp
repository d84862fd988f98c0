#pragma once

#include "stbc/construct.hpp"
#include "stbc/dispersion.hpp"
#include "stbc/rng.hpp"

namespace stbc {

/// Quasi-static flat-fading coefficients, one column per receive antenna,
/// constant over the T periods of a codeword.
struct ChannelRealization {
    ComplexMatrix coefficients; // n_tx x n_rx, i.i.d. CN(0,1)
};

/// One received codeword block. stacked_real is the deterministic restacking
/// of samples: per receive antenna, T real parts then T imaginary parts.
struct ReceivedBlock {
    ComplexMatrix samples; // T x n_rx
    std::vector<double> stacked_real; // 2*T*n_rx
};

ChannelRealization rayleigh(std::size_t n_tx, std::size_t n_rx, Rng& rng);

/// Precomputed real expansions of a code's dispersion matrices; builds the
/// equivalent channel without re-expanding per call. The per-block hot path
/// of the simulator lives here.
class ExpandedCode {
public:
    explicit ExpandedCode(const DispersionSet& code);

    std::size_t n_tx() const { return n_tx_; }
    std::size_t span() const { return span_; }
    std::size_t n_symbols() const { return exp_a_.size(); }

    /// 2*T*n_rx x 2K: row block per receive antenna i holds columns
    /// [expA_1 h_i, expB_1 h_i, ..., expA_K h_i, expB_K h_i]
    RealMatrix equivalent_channel(const ChannelRealization& h) const;

private:
    std::size_t n_tx_, span_;
    std::vector<RealMatrix> exp_a_, exp_b_;
};

RealMatrix equivalent_channel(const DispersionSet& code, const ChannelRealization& h);

// restacking bijection between complex samples and the real vector form
std::vector<double> stack_real(const ComplexMatrix& samples);
ComplexMatrix unstack_real(const std::vector<double>& v, std::size_t span, std::size_t n_rx);

// x ↔ [x_1^R, x_1^I, ..., x_K^R, x_K^I]
std::vector<double> stack_symbols(const SymbolVector& x);
SymbolVector unstack_symbols(const std::vector<double>& v);

/// r = sqrt(rho/N_t) * H * x + noise, noise i.i.d. N(0, 1/2) per real
/// dimension (CN(0,1) per complex sample). rho is the linear per-receive-
/// antenna SNR when the symbols have unit average energy.
ReceivedBlock transmit(const DispersionSet& code, const SymbolVector& x,
                       const ChannelRealization& h, double rho, Rng& rng);

/// same forward model on a prebuilt equivalent channel (simulator hot path);
/// rng == nullptr means noiseless
ReceivedBlock transmit_through(const RealMatrix& heq, const SymbolVector& x, std::size_t n_tx,
                               std::size_t span, std::size_t n_rx, double rho, Rng* rng);

/// same forward model with the noise variance forced to zero
ReceivedBlock transmit_noiseless(const DispersionSet& code, const SymbolVector& x,
                                 const ChannelRealization& h, double rho);

} // namespace stbc

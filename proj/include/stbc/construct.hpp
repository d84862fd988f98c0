#pragma once

#include <string>
#include <vector>

#include "stbc/dispersion.hpp"

namespace stbc {

/// K complex symbols, one per dispersion pair.
using SymbolVector = std::vector<cplx>;

/// Alamouti O-STBC for two transmit antennas: codeword [[x1, x2], [-x2*, x1*]].
DispersionSet alamouti();

/// Rate-3/4 orthogonal design for four transmit antennas, K=3, T=4. The
/// embedded design has no identically-zero codeword entries, so codes derived
/// from it keep an even power profile and never switch an antenna off.
DispersionSet ostbc_rate34_4tx();

/// Doubling construction: maps a K-symbol O-STBC on N_t antennas to a
/// 2K-symbol MDC quasi-orthogonal code on 2N_t antennas over 2T periods.
/// The seed must pass check_ostbc; otherwise a StructureError names the
/// violated orthogonality condition.
DispersionSet theorem3_map(const DispersionSet& seed, double seed_tol = 1e-10);

/// Deletes the given antenna columns (1-based) from every dispersion matrix.
/// Quasi-orthogonal structure survives; K and T are unchanged.
DispersionSet remove_columns(const DispersionSet& code, const std::vector<std::size_t>& columns);

/// G = sum_q (x_q^R A_q + j x_q^I B_q)
ComplexMatrix codeword(const DispersionSet& code, const SymbolVector& x);

/// Maximum achievable rate (1+n)/(2n), n = ceil(n_tx/4); defined for n_tx >= 3.
Rational max_rate(std::size_t n_tx);

/// Builders for the CLI: alamouti | ostbc34 | mdc4 | mdc8
DispersionSet builtin_code(const std::string& family);

} // namespace stbc

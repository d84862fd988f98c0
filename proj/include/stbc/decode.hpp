#pragma once

#include "stbc/chansim.hpp"
#include "stbc/modem.hpp"

namespace stbc {

/// Pairing of the 2K real symbol coordinates into jointly-detected groups.
struct GroupStructure {
    std::vector<std::pair<std::size_t, std::size_t>> groups; // 0-based index pairs
};

/// z = H^T r
std::vector<double> matched_filter(const RealMatrix& heq, const ReceivedBlock& r);

/// Finds the pairing of coordinates such that every Gram entry outside the
/// paired 2x2 blocks has magnitude <= tol. Coordinates coupled to nothing
/// (diagonal Gram) are paired consecutively. Throws StructureError when no
/// 2x2 pairing exists, i.e. the code is not MDC quasi-orthogonal.
GroupStructure discover_groups(const RealMatrix& gram, double tol);

/// Joint ML detection of two real symbols per group: each complex symbol is
/// chosen from the constellation by minimizing its own 2x2 quadratic metric.
/// Exact ML for codes whose H^T H is 2x2 block-diagonal; K*|c| metric
/// evaluations total. The caller is responsible for the code passing
/// check_mdcqo; operationally a non-pairable Gram raises StructureError.
SymbolVector ml_decode_grouped(const DispersionSet& code, const RealMatrix& heq,
                               const ReceivedBlock& r, const Constellation& c, double rho);

/// Brute-force argmin of || r - sqrt(rho/N_t) H x || over all |c|^K symbol
/// vectors; ties resolve to the lowest lexicographic point-index vector.
SymbolVector ml_decode_exhaustive(const DispersionSet& code, const RealMatrix& heq,
                                  const ReceivedBlock& r, const Constellation& c, double rho,
                                  std::size_t budget = std::size_t{1} << 20);

/// || r - amp * H * x ||^2
double ml_metric(const RealMatrix& heq, const std::vector<double>& r_stacked,
                 const std::vector<double>& x_stacked, double amp);

} // namespace stbc

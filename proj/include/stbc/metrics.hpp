#pragma once

#include "stbc/construct.hpp"
#include "stbc/modem.hpp"

namespace stbc {

struct MinDetOptions {
    std::size_t budget = std::size_t{1} << 24; // max enumerated difference vectors
    std::size_t workers = 1;
    double abort_below = -1.0; // stop once the running min falls below this; < 0 disables
};

struct MinDetResult {
    double value = 0.0;
    SymbolVector x1, x2; // a codeword symbol pair achieving the minimum
    bool aborted = false; // scan stopped early via abort_below; value is an upper bound
};

/// Exhaustive minimum of det((G1-G2)^H (G1-G2)) over distinct codeword pairs.
/// Enumerates nonzero symbol-difference vectors (the metric depends only on
/// the difference, and the codeword map is linear in the stacked real
/// symbols), which roughly halves the work versus naive pairs. Partitions of
/// the difference space may be scanned in parallel; the merged result is
/// deterministic regardless of the partitioning.
MinDetResult min_determinant(const DispersionSet& code, const Constellation& c,
                             const MinDetOptions& opts = {});

/// Minimum rank of G1-G2 over distinct codeword pairs; rank from singular
/// values with threshold 1e-9 * sigma_max. Equals n_tx iff the code has full
/// transmit diversity on this constellation.
std::size_t diversity_order(const DispersionSet& code, const Constellation& c,
                            const MinDetOptions& opts = {});

/// Fraction of codeword entries with magnitude <= 1e-12 over every symbol
/// assignment (the P_o statistic).
double p_zero(const DispersionSet& code, const Constellation& c,
              std::size_t budget = std::size_t{1} << 24);

/// Average |G[t][n]|^2 per transmit antenna n over all symbol assignments
/// and periods.
std::vector<double> per_antenna_power(const DispersionSet& code, const Constellation& c,
                                      std::size_t budget = std::size_t{1} << 24);

struct CodeMetrics {
    double min_determinant = 0.0;
    std::size_t diversity_order = 0;
    double p_zero = 0.0;
    std::vector<double> per_antenna_power;
    SymbolVector argmin_x1, argmin_x2;
};

CodeMetrics compute_metrics(const DispersionSet& code, const Constellation& c,
                            const MinDetOptions& opts = {});

struct AngleGrid {
    double lo_deg = 0.0;
    double hi_deg = 45.0;
    double step_deg = 0.01;
};

struct AnglePoint {
    double theta_deg;
    double min_det;
};

struct AngleResult {
    double theta_deg = 0.0;
    double min_det = 0.0;
    std::vector<AnglePoint> curve; // per-grid-point values, filled when recorded
};

/// Grid argmax of min_determinant(code, rotate(base, theta)); ties resolve to
/// the smallest theta. With record_curve the exact value at every grid point
/// is kept (and no pruning happens); otherwise grid points that provably lose
/// to the incumbent are abandoned early.
AngleResult optimize_angle(const DispersionSet& code, const Constellation& base,
                           const AngleGrid& grid, const MinDetOptions& opts = {},
                           bool record_curve = false);

/// Energy conventions for Table-style comparisons. integer_grid restores the
/// odd-integer QAM lattice; unit_energy sets E[|p|^2] = 1; unit_power scales
/// to E[|p|^2] = T/K so the average transmit power per antenna per period is
/// one (codes built here have unit-norm dispersion columns, making the two
/// equivalent at rate 1).
enum class EnergyConvention { integer_grid, unit_energy, unit_power };

EnergyConvention convention_from_string(const std::string& s);

Constellation normalized_for(const Constellation& c, const DispersionSet& code,
                             EnergyConvention conv);

} // namespace stbc

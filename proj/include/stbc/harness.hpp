#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stbc/dispersion.hpp"

namespace stbc {

/// One BLER experiment: code x constellation x SNR sweep. Loadable from JSON
/// (unknown keys rejected).
struct SimConfig {
    std::string code;          // builtin family (alamouti|ostbc34|mdc4|mdc8) or a file path
    std::string constellation; // spec string, e.g. "qam4@13.29"
    std::vector<double> snr_db;
    std::size_t n_rx = 1;
    std::uint64_t max_blocks = 1000000;
    std::uint64_t target_errors = 100;
    std::uint64_t master_seed = 1;
    std::size_t workers = 1;

    static SimConfig from_json_text(const std::string& text);
    static SimConfig load(const std::string& path);
    std::string to_json_text() const;
    void validate() const;
};

struct SnrRecord {
    double rho_db = 0.0;
    std::uint64_t blocks = 0;
    std::uint64_t errors = 0;
    double bler = 0.0;
    double ci_lo = 0.0; // Wilson 95%
    double ci_hi = 0.0;
};

struct SimResult {
    std::vector<SnrRecord> points;
    std::string code_identity;
    std::uint64_t master_seed = 0;
    std::string config_hash;
};

/// Monte Carlo block-error simulation with grouped ML decoding. A block error
/// is any complex symbol decoded wrongly. Each SNR point stops at max_blocks
/// or once target_errors is crossed (checked at round granularity so that a
/// fixed worker count reproduces bit-identical results). Per-trial RNG
/// streams derive from (master_seed, snr index, trial index): worker
/// scheduling cannot change any trial's samples.
SimResult run_bler(const SimConfig& cfg);

/// builtin family name or dispersion-set JSON file
DispersionSet resolve_code(const std::string& ref);

/// rho_db,blocks,errors,bler,ci_lo,ci_hi with fixed formatting
void emit_csv(const SimResult& result, std::ostream& out);
void emit_csv(const SimResult& result, const std::string& path);
std::vector<SnrRecord> parse_csv(std::istream& in);

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials);

} // namespace stbc

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stbc/complex_matrix.hpp"

namespace stbc {

struct Rational {
    long num = 0;
    long den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
};

Rational make_rational(long num, long den);

/// One complex symbol's weighting pair: A_q carries the real part, B_q the
/// imaginary part of the codeword contribution.
struct DispersionPair {
    ComplexMatrix a;
    ComplexMatrix b;
};

/// A linear STBC: K pairs of T x N_t dispersion matrices.
class DispersionSet {
public:
    DispersionSet(std::size_t n_tx, std::size_t span, std::vector<DispersionPair> pairs);

    std::size_t n_tx() const { return n_tx_; }
    std::size_t span() const { return span_; }
    std::size_t n_symbols() const { return pairs_.size(); }
    Rational rate() const;

    const DispersionPair& pair(std::size_t q) const { return pairs_[q]; } // 0-based
    const std::vector<DispersionPair>& pairs() const { return pairs_; }

    std::string to_json_text() const;
    static DispersionSet from_json_text(const std::string& text);
    void save(const std::string& path) const;
    static DispersionSet load(const std::string& path);

private:
    std::size_t n_tx_;
    std::size_t span_;
    std::vector<DispersionPair> pairs_;
};

enum class Classification { orthogonal, mdc_quasi_orthogonal, unstructured };

std::string to_string(Classification c);

struct Violation {
    std::string constraint; // unit_norm_a, anti_commute_b, cross_ab, ...
    std::size_t q = 0, p = 0; // 1-based symbol indices
    double residual = 0.0;
};

struct StructureReport {
    Classification classification = Classification::unstructured;
    std::vector<Violation> violations;
    double max_residual = 0.0;
    // Eq. 3(i)-style unit-norm status. Not part of the MDC-QO constraint set;
    // reported as a diversity-related note.
    bool unit_norm_ok = false;
};

/// Orthogonal-design certification: unit norm, anti-commutation over q != p,
/// and the A-B cross condition over all q, p.
StructureReport check_ostbc(const DispersionSet& code, double tol);

/// MDC quasi-orthogonality certification: anti-commutation and the A-B cross
/// condition, both over q != p only.
StructureReport check_mdcqo(const DispersionSet& code, double tol);

/// orthogonal if check_ostbc passes, else mdc_quasi_orthogonal if check_mdcqo
/// passes, else unstructured
StructureReport classify(const DispersionSet& code, double tol);

/// Draws `trials` random channels, builds the equivalent channel H and tests
/// that H^T H is block-diagonal with 2x2 blocks: every entry outside the
/// blocks must have magnitude <= tol * ||H||_F^2. Per-trial RNG streams are
/// derived from (rng_seed, trial), so the result is order-independent.
bool check_blockdiag(const DispersionSet& code, std::size_t trials, double tol,
                     std::uint64_t rng_seed);

} // namespace stbc

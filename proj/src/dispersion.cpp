#include "stbc/dispersion.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stbc/chansim.hpp"
#include "stbc/errors.hpp"
#include "stbc/rng.hpp"

namespace stbc {

using nlohmann::json;

Rational make_rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long g = std::gcd(std::abs(num), den);
    return g ? Rational{num / g, den / g} : Rational{0, 1};
}

DispersionSet::DispersionSet(std::size_t n_tx, std::size_t span,
                             std::vector<DispersionPair> pairs)
    : n_tx_(n_tx), span_(span), pairs_(std::move(pairs)) {
    if (n_tx_ == 0 || span_ == 0) throw ShapeError("DispersionSet: empty dimensions");
    if (pairs_.empty()) throw ShapeError("DispersionSet: no dispersion pairs");
    for (std::size_t q = 0; q < pairs_.size(); ++q) {
        const auto check = [&](const ComplexMatrix& m, const char* which) {
            if (m.rows() != span_ || m.cols() != n_tx_) {
                throw ShapeError("DispersionSet: " + std::string(which) + "_" +
                                 std::to_string(q + 1) + " is " + std::to_string(m.rows()) +
                                 "x" + std::to_string(m.cols()) + ", expected " +
                                 std::to_string(span_) + "x" + std::to_string(n_tx_));
            }
            if (!m.all_finite()) {
                throw DomainError("DispersionSet: non-finite entry in " + std::string(which) +
                                  "_" + std::to_string(q + 1));
            }
        };
        check(pairs_[q].a, "A");
        check(pairs_[q].b, "B");
    }
}

Rational DispersionSet::rate() const {
    return make_rational(static_cast<long>(n_symbols()), static_cast<long>(span_));
}

std::string DispersionSet::to_json_text() const {
    json doc;
    doc["n_tx"] = n_tx_;
    doc["span"] = span_;
    doc["n_symbols"] = n_symbols();
    json pairs = json::array();
    for (const auto& pr : pairs_) {
        pairs.push_back({{"A", format_matrix(pr.a)}, {"B", format_matrix(pr.b)}});
    }
    doc["pairs"] = std::move(pairs);
    return doc.dump(2) + "\n";
}

DispersionSet DispersionSet::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("dispersion set: invalid JSON: ") + e.what());
    }
    for (const auto& key : {"n_tx", "span", "n_symbols", "pairs"}) {
        if (!doc.contains(key))
            throw ConfigError(std::string("dispersion set: missing key '") + key + "'");
    }
    const auto n_tx = doc.at("n_tx").get<std::size_t>();
    const auto span = doc.at("span").get<std::size_t>();
    const auto k = doc.at("n_symbols").get<std::size_t>();
    std::vector<DispersionPair> pairs;
    for (const auto& pr : doc.at("pairs")) {
        pairs.push_back({parse_matrix(pr.at("A").get<std::string>()),
                         parse_matrix(pr.at("B").get<std::string>())});
    }
    if (pairs.size() != k) {
        throw ConfigError("dispersion set: n_symbols=" + std::to_string(k) + " but " +
                          std::to_string(pairs.size()) + " pairs listed");
    }
    return DispersionSet(n_tx, span, std::move(pairs));
}

void DispersionSet::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    out << to_json_text();
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

DispersionSet DispersionSet::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string to_string(Classification c) {
    switch (c) {
    case Classification::orthogonal: return "orthogonal";
    case Classification::mdc_quasi_orthogonal: return "mdc_quasi_orthogonal";
    case Classification::unstructured: return "unstructured";
    }
    return "unstructured";
}

namespace {

// residual = max entrywise deviation, normalized by the larger operand
// product's scale so that pass/fail is invariant under code scaling
double pair_residual(const ComplexMatrix& x, const ComplexMatrix& y, double sign) {
    const ComplexMatrix lhs = hermitian(x) * y;
    const ComplexMatrix rhs = hermitian(y) * x;
    const ComplexMatrix dev = lhs - rhs * sign;
    const double scale = std::max({x.frobenius_norm() * y.frobenius_norm(), 1e-300});
    return dev.max_abs() / scale;
}

double unit_norm_residual(const ComplexMatrix& x) {
    const ComplexMatrix dev = hermitian(x) * x - ComplexMatrix::identity(x.cols());
    const double scale = std::max(x.frobenius_norm() * x.frobenius_norm(), 1e-300);
    return dev.max_abs() / scale;
}

struct ConstraintScan {
    std::vector<Violation> violations;
    double max_residual = 0.0;

    void record(const std::string& constraint, std::size_t q, std::size_t p, double residual,
                double tol) {
        max_residual = std::max(max_residual, residual);
        if (residual > tol) violations.push_back({constraint, q, p, residual});
    }
};

// Eq. (5): anti-commutation of like matrices and the A-B cross condition,
// both restricted to q != p
void scan_mdcqo(const DispersionSet& code, double tol, ConstraintScan& scan) {
    const std::size_t k = code.n_symbols();
    for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t p = 0; p < k; ++p) {
            if (p == q) continue;
            if (q < p) {
                scan.record("anti_commute_a", q + 1, p + 1,
                            pair_residual(code.pair(q).a, code.pair(p).a, -1.0), tol);
                scan.record("anti_commute_b", q + 1, p + 1,
                            pair_residual(code.pair(q).b, code.pair(p).b, -1.0), tol);
            }
            scan.record("cross_ab", q + 1, p + 1,
                        pair_residual(code.pair(q).a, code.pair(p).b, 1.0), tol);
        }
    }
}

bool unit_norm_scan(const DispersionSet& code, double tol, ConstraintScan& scan) {
    bool ok = true;
    for (std::size_t q = 0; q < code.n_symbols(); ++q) {
        const double ra = unit_norm_residual(code.pair(q).a);
        const double rb = unit_norm_residual(code.pair(q).b);
        scan.record("unit_norm_a", q + 1, q + 1, ra, tol);
        scan.record("unit_norm_b", q + 1, q + 1, rb, tol);
        ok = ok && ra <= tol && rb <= tol;
    }
    return ok;
}

} // namespace

StructureReport check_ostbc(const DispersionSet& code, double tol) {
    ConstraintScan scan;
    const bool unit_ok = unit_norm_scan(code, tol, scan);
    scan_mdcqo(code, tol, scan);
    // Eq. (3)(iii) additionally covers q = p
    for (std::size_t q = 0; q < code.n_symbols(); ++q) {
        scan.record("cross_ab", q + 1, q + 1,
                    pair_residual(code.pair(q).a, code.pair(q).b, 1.0), tol);
    }
    StructureReport report;
    report.violations = std::move(scan.violations);
    report.max_residual = scan.max_residual;
    report.unit_norm_ok = unit_ok;
    report.classification = report.violations.empty() ? Classification::orthogonal
                                                      : Classification::unstructured;
    return report;
}

StructureReport check_mdcqo(const DispersionSet& code, double tol) {
    ConstraintScan scan;
    scan_mdcqo(code, tol, scan);
    StructureReport report;
    report.violations = std::move(scan.violations);
    report.max_residual = scan.max_residual;
    report.classification = report.violations.empty()
                                ? Classification::mdc_quasi_orthogonal
                                : Classification::unstructured;
    // unit norm is not part of Eq. (5); report it as a side note only
    ConstraintScan side;
    report.unit_norm_ok = unit_norm_scan(code, tol, side);
    return report;
}

StructureReport classify(const DispersionSet& code, double tol) {
    StructureReport ortho = check_ostbc(code, tol);
    if (ortho.classification == Classification::orthogonal) return ortho;
    return check_mdcqo(code, tol);
}

bool check_blockdiag(const DispersionSet& code, std::size_t trials, double tol,
                     std::uint64_t rng_seed) {
    if (trials < 1) throw DomainError("check_blockdiag: trials must be >= 1");
    const std::size_t k2 = 2 * code.n_symbols();
    const ExpandedCode expanded(code);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(rng_seed, trial);
        const ChannelRealization h = rayleigh(code.n_tx(), 1, rng);
        const RealMatrix heq = expanded.equivalent_channel(h);
        const RealMatrix gram = heq.gram();
        const double h2 = heq.frobenius_norm();
        const double bound = tol * h2 * h2;
        for (std::size_t i = 0; i < k2; ++i) {
            for (std::size_t j = 0; j < k2; ++j) {
                if (i / 2 == j / 2) continue; // inside a 2x2 diagonal block
                if (std::abs(gram(i, j)) > bound) return false;
            }
        }
    }
    return true;
}

} // namespace stbc

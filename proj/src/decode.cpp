#include "stbc/decode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stbc/errors.hpp"

namespace stbc {

std::vector<double> matched_filter(const RealMatrix& heq, const ReceivedBlock& r) {
    return heq.tmul(r.stacked_real);
}

GroupStructure discover_groups(const RealMatrix& gram, double tol) {
    if (gram.rows() != gram.cols()) {
        throw ShapeError("discover_groups: Gram matrix is " + std::to_string(gram.rows()) +
                         "x" + std::to_string(gram.cols()));
    }
    const std::size_t n = gram.rows();
    if (n % 2 != 0) throw StructureError("discover_groups: odd coordinate count");

    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> partner(n, none);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || std::abs(gram(i, j)) <= tol) continue;
            if (partner[i] != none && partner[i] != j) {
                throw StructureError("discover_groups: coordinate " + std::to_string(i) +
                                     " couples to both " + std::to_string(partner[i]) +
                                     " and " + std::to_string(j) +
                                     "; Gram is not 2x2 block-diagonal");
            }
            partner[i] = j;
        }
    }
    GroupStructure out;
    std::vector<bool> used(n, false);
    std::vector<std::size_t> loose;
    for (std::size_t i = 0; i < n; ++i) {
        if (used[i]) continue;
        if (partner[i] == none) {
            loose.push_back(i); // diagonal coordinate, pair with the next loose one
            used[i] = true;
            continue;
        }
        const std::size_t j = partner[i];
        if (partner[j] != i) {
            throw StructureError("discover_groups: asymmetric coupling between " +
                                 std::to_string(i) + " and " + std::to_string(j));
        }
        out.groups.emplace_back(i, j);
        used[i] = used[j] = true;
    }
    for (std::size_t k = 0; k + 1 < loose.size(); k += 2)
        out.groups.emplace_back(loose[k], loose[k + 1]);
    if (loose.size() % 2 != 0) {
        throw StructureError("discover_groups: unpaired loose coordinate " +
                             std::to_string(loose.back()));
    }
    std::sort(out.groups.begin(), out.groups.end());
    return out;
}

SymbolVector ml_decode_grouped(const DispersionSet& code, const RealMatrix& heq,
                               const ReceivedBlock& r, const Constellation& c, double rho) {
    if (rho <= 0.0) throw DomainError("ml_decode_grouped: rho must be positive");
    const std::size_t k = code.n_symbols();
    if (heq.cols() != 2 * k) {
        throw ShapeError("ml_decode_grouped: H has " + std::to_string(heq.cols()) +
                         " columns for a K=" + std::to_string(k) + " code");
    }
    const RealMatrix gram = heq.gram();
    const std::vector<double> z = matched_filter(heq, r);

    const GroupStructure groups = discover_groups(gram, 1e-9 * gram.max_abs());
    for (std::size_t q = 0; q < k; ++q) {
        if (groups.groups[q] != std::make_pair(2 * q, 2 * q + 1)) {
            throw StructureError(
                "ml_decode_grouped: group structure does not pair the I and Q of symbol " +
                std::to_string(q + 1));
        }
    }

    const double amp = std::sqrt(rho / static_cast<double>(code.n_tx()));
    SymbolVector out(k);
    for (std::size_t q = 0; q < k; ++q) {
        const double g00 = gram(2 * q, 2 * q);
        const double g01 = gram(2 * q, 2 * q + 1);
        const double g11 = gram(2 * q + 1, 2 * q + 1);
        const double z0 = z[2 * q], z1 = z[2 * q + 1];
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const double xr = c.point(i).real(), xi = c.point(i).imag();
            const double metric = amp * amp * (xr * xr * g00 + 2.0 * xr * xi * g01 + xi * xi * g11)
                                  - 2.0 * amp * (xr * z0 + xi * z1);
            if (metric < best) {
                best = metric;
                best_i = i;
            }
        }
        out[q] = c.point(best_i);
    }
    return out;
}

SymbolVector ml_decode_exhaustive(const DispersionSet& code, const RealMatrix& heq,
                                  const ReceivedBlock& r, const Constellation& c, double rho,
                                  std::size_t budget) {
    if (rho <= 0.0) throw DomainError("ml_decode_exhaustive: rho must be positive");
    const std::size_t k = code.n_symbols();
    const std::size_t m = c.size();
    double combos = 1.0;
    for (std::size_t q = 0; q < k; ++q) combos *= static_cast<double>(m);
    if (combos > static_cast<double>(budget)) {
        throw CapacityError("ml_decode_exhaustive: |c|^K = " + std::to_string(combos) +
                            " exceeds budget " + std::to_string(budget));
    }

    const double amp = std::sqrt(rho / static_cast<double>(code.n_tx()));
    std::vector<std::size_t> idx(k, 0);
    std::vector<double> xs(2 * k);
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_idx = idx;
    for (;;) {
        for (std::size_t q = 0; q < k; ++q) {
            xs[2 * q] = c.point(idx[q]).real();
            xs[2 * q + 1] = c.point(idx[q]).imag();
        }
        const double metric = ml_metric(heq, r.stacked_real, xs, amp);
        if (metric < best) { // strict: lexicographically lowest index wins ties
            best = metric;
            best_idx = idx;
        }
        // odometer, last symbol fastest, so combinations ascend lexicographically
        std::size_t pos = k;
        while (pos-- > 0) {
            if (++idx[pos] < m) break;
            idx[pos] = 0;
            if (pos == 0) {
                SymbolVector out(k);
                for (std::size_t q = 0; q < k; ++q) out[q] = c.point(best_idx[q]);
                return out;
            }
        }
    }
}

double ml_metric(const RealMatrix& heq, const std::vector<double>& r_stacked,
                 const std::vector<double>& x_stacked, double amp) {
    if (heq.rows() != r_stacked.size()) {
        throw ShapeError("ml_metric: H rows " + std::to_string(heq.rows()) + " vs r length " +
                         std::to_string(r_stacked.size()));
    }
    const std::vector<double> hx = heq.mul(x_stacked);
    double s = 0.0;
    for (std::size_t i = 0; i < hx.size(); ++i) {
        const double d = r_stacked[i] - amp * hx[i];
        s += d * d;
    }
    return s;
}

} // namespace stbc

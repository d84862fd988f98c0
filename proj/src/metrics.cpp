#include "stbc/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "stbc/errors.hpp"

namespace stbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct DiffSet {
    std::vector<cplx> values; // distinct nonzero point differences
    std::vector<std::pair<std::size_t, std::size_t>> reps; // (a,b): p[a]-p[b] = value
};

DiffSet build_diff_set(const Constellation& c) {
    DiffSet out;
    std::map<std::pair<long long, long long>, bool> seen;
    for (std::size_t a = 0; a < c.size(); ++a) {
        for (std::size_t b = 0; b < c.size(); ++b) {
            if (a == b) continue;
            const cplx d = c.point(a) - c.point(b);
            const auto key = std::make_pair(std::llround(d.real() * 1e12),
                                            std::llround(d.imag() * 1e12));
            if (seen.emplace(key, true).second) {
                out.values.push_back(d);
                out.reps.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::uint64_t checked_combo_count(std::size_t base, std::size_t k, std::size_t budget,
                                  const char* who) {
    long double total = 1.0L;
    for (std::size_t q = 0; q < k; ++q) total *= static_cast<long double>(base);
    if (total > static_cast<long double>(budget)) {
        throw CapacityError(std::string(who) + ": " + std::to_string(base) + "^" +
                            std::to_string(k) + " difference vectors exceed the budget of " +
                            std::to_string(budget) +
                            "; a sampled search is the only alternative at this size");
    }
    return static_cast<std::uint64_t>(total);
}

// per-(symbol, digit) codeword contribution; digit 0 is the zero difference
struct ComboTables {
    std::size_t k, span, n_tx, base;
    std::vector<std::vector<cplx>> contrib; // [q * base + d] -> span*n_tx entries (d >= 1)

    ComboTables(const DispersionSet& code, const std::vector<cplx>& diffs)
        : k(code.n_symbols()), span(code.span()), n_tx(code.n_tx()), base(diffs.size() + 1),
          contrib(k * base) {
        for (std::size_t q = 0; q < k; ++q) {
            const ComplexMatrix& a = code.pair(q).a;
            const ComplexMatrix& b = code.pair(q).b;
            for (std::size_t d = 1; d < base; ++d) {
                std::vector<cplx>& m = contrib[q * base + d];
                m.resize(span * n_tx);
                const double re = diffs[d - 1].real(), im = diffs[d - 1].imag();
                for (std::size_t i = 0; i < span * n_tx; ++i) {
                    m[i] = re * a.data()[i] + cplx(0.0, im) * b.data()[i];
                }
            }
        }
    }

    void decode_digits(std::uint64_t index, std::vector<std::size_t>& dig) const {
        for (std::size_t q = k; q-- > 0;) {
            dig[q] = static_cast<std::size_t>(index % base);
            index /= base;
        }
    }

    void build(const std::vector<std::size_t>& dig, std::vector<cplx>& d) const {
        std::fill(d.begin(), d.end(), cplx(0.0));
        for (std::size_t q = 0; q < k; ++q) {
            if (dig[q] == 0) continue;
            const std::vector<cplx>& m = contrib[q * base + dig[q]];
            for (std::size_t i = 0; i < d.size(); ++i) d[i] += m[i];
        }
    }
};

// det(D^H D) with stack scratch, clamped to >= 0
double fast_gram_det(const std::vector<cplx>& d, std::size_t span, std::size_t n,
                     std::vector<cplx>& g) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < span; ++t) s += std::conj(d[t * n + i]) * d[t * n + j];
            g[i * n + j] = s;
            g[j * n + i] = std::conj(s);
        }
    }
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(g[col * n + col]);
        for (std::size_t i = col + 1; i < n; ++i) {
            const double v = std::abs(g[i * n + col]);
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(g[col * n + j], g[piv * n + j]);
            det = -det;
        }
        const cplx pv = g[col * n + col];
        det *= pv;
        for (std::size_t i = col + 1; i < n; ++i) {
            const cplx f = g[i * n + col] / pv;
            if (f == 0.0) continue;
            for (std::size_t j = col + 1; j < n; ++j) g[i * n + j] -= f * g[col * n + j];
        }
    }
    return std::max(0.0, det.real());
}

struct ScanBest {
    double value = kInf;
    std::uint64_t combo = 0;
};

// smaller value wins; ties go to the lower combo index, so the merged result
// is independent of the partitioning
void merge_best(ScanBest& into, const ScanBest& from) {
    if (from.value < into.value || (from.value == into.value && from.combo < into.combo))
        into = from;
}

} // namespace

MinDetResult min_determinant(const DispersionSet& code, const Constellation& c,
                             const MinDetOptions& opts) {
    const DiffSet ds = build_diff_set(c);
    const std::size_t base = ds.values.size() + 1;
    const std::uint64_t total =
        checked_combo_count(base, code.n_symbols(), opts.budget, "min_determinant");
    const ComboTables tables(code, ds.values);

    std::atomic<bool> stop{false};
    const bool may_abort = opts.abort_below >= 0.0;

    auto scan = [&](std::uint64_t begin, std::uint64_t end, ScanBest& best) {
        std::vector<std::size_t> dig(tables.k);
        std::vector<cplx> d(tables.span * tables.n_tx);
        std::vector<cplx> g(tables.n_tx * tables.n_tx);
        tables.decode_digits(begin, dig);
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            tables.build(dig, d);
            const double det = fast_gram_det(d, tables.span, tables.n_tx, g);
            if (det < best.value) {
                best.value = det;
                best.combo = idx;
                if (may_abort && det < opts.abort_below) {
                    stop.store(true, std::memory_order_relaxed);
                    return;
                }
            }
            if ((idx & 0x1ff) == 0 && stop.load(std::memory_order_relaxed)) return;
            // odometer step
            for (std::size_t q = tables.k; q-- > 0;) {
                if (++dig[q] < base) break;
                dig[q] = 0;
            }
        }
    };

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(opts.workers, (total - 1) / 1024 + 1));
    ScanBest best;
    if (workers == 1) {
        scan(1, total, best); // combo 0 is the all-zero difference
    } else {
        std::vector<ScanBest> partial(workers);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (total - 1) / workers + 1;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::max<std::uint64_t>(1, w * chunk);
            const std::uint64_t end = std::min<std::uint64_t>(total, (w + 1) * chunk);
            if (begin >= end) continue;
            pool.emplace_back([&, begin, end, w] { scan(begin, end, partial[w]); });
        }
        for (auto& t : pool) t.join();
        for (const auto& p : partial) merge_best(best, p);
    }

    MinDetResult out;
    out.value = best.value;
    out.aborted = stop.load();
    std::vector<std::size_t> dig(tables.k);
    tables.decode_digits(best.combo, dig);
    out.x1.resize(tables.k);
    out.x2.resize(tables.k);
    for (std::size_t q = 0; q < tables.k; ++q) {
        if (dig[q] == 0) {
            out.x1[q] = out.x2[q] = c.point(0);
        } else {
            out.x1[q] = c.point(ds.reps[dig[q] - 1].first);
            out.x2[q] = c.point(ds.reps[dig[q] - 1].second);
        }
    }
    return out;
}

std::size_t diversity_order(const DispersionSet& code, const Constellation& c,
                            const MinDetOptions& opts) {
    const DiffSet ds = build_diff_set(c);
    const std::size_t base = ds.values.size() + 1;
    const std::uint64_t total =
        checked_combo_count(base, code.n_symbols(), opts.budget, "diversity_order");
    const ComboTables tables(code, ds.values);

    std::vector<std::size_t> dig(tables.k);
    std::vector<cplx> d(tables.span * tables.n_tx);
    ComplexMatrix dm(tables.span, tables.n_tx);
    std::size_t min_rank = tables.n_tx;
    tables.decode_digits(1, dig);
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        tables.build(dig, d);
        for (std::size_t i = 0; i < tables.span; ++i)
            for (std::size_t j = 0; j < tables.n_tx; ++j) dm(i, j) = d[i * tables.n_tx + j];
        min_rank = std::min(min_rank, rank(dm, 1e-9));
        if (min_rank == 0) break;
        for (std::size_t q = tables.k; q-- > 0;) {
            if (++dig[q] < base) break;
            dig[q] = 0;
        }
    }
    return min_rank;
}

namespace {

// walk every symbol assignment and hand G to the visitor
template <typename Fn>
void for_each_codeword(const DispersionSet& code, const Constellation& c, std::size_t budget,
                       const char* who, Fn&& visit) {
    const std::size_t m = c.size();
    const std::size_t k = code.n_symbols();
    long double total = 1.0L;
    for (std::size_t q = 0; q < k; ++q) total *= static_cast<long double>(m);
    if (total > static_cast<long double>(budget)) {
        throw CapacityError(std::string(who) + ": |c|^K = " + std::to_string(m) + "^" +
                            std::to_string(k) + " codewords exceed the budget of " +
                            std::to_string(budget));
    }
    const std::size_t cells = code.span() * code.n_tx();
    std::vector<std::vector<cplx>> contrib(k * m, std::vector<cplx>(cells));
    for (std::size_t q = 0; q < k; ++q) {
        for (std::size_t i = 0; i < m; ++i) {
            const double re = c.point(i).real(), im = c.point(i).imag();
            for (std::size_t e = 0; e < cells; ++e) {
                contrib[q * m + i][e] =
                    re * code.pair(q).a.data()[e] + cplx(0.0, im) * code.pair(q).b.data()[e];
            }
        }
    }
    std::vector<std::size_t> dig(k, 0);
    std::vector<cplx> g(cells);
    const auto count = static_cast<std::uint64_t>(total);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        std::fill(g.begin(), g.end(), cplx(0.0));
        for (std::size_t q = 0; q < k; ++q) {
            const std::vector<cplx>& add = contrib[q * m + dig[q]];
            for (std::size_t e = 0; e < cells; ++e) g[e] += add[e];
        }
        visit(g);
        for (std::size_t q = k; q-- > 0;) {
            if (++dig[q] < m) break;
            dig[q] = 0;
        }
    }
}

} // namespace

double p_zero(const DispersionSet& code, const Constellation& c, std::size_t budget) {
    std::uint64_t zero = 0, seen = 0;
    for_each_codeword(code, c, budget, "p_zero", [&](const std::vector<cplx>& g) {
        for (const cplx& v : g)
            if (std::abs(v) <= 1e-12) ++zero;
        seen += g.size();
    });
    return static_cast<double>(zero) / static_cast<double>(seen);
}

std::vector<double> per_antenna_power(const DispersionSet& code, const Constellation& c,
                                      std::size_t budget) {
    std::vector<double> acc(code.n_tx(), 0.0);
    std::uint64_t blocks = 0;
    const std::size_t n = code.n_tx();
    for_each_codeword(code, c, budget, "per_antenna_power", [&](const std::vector<cplx>& g) {
        for (std::size_t e = 0; e < g.size(); ++e) acc[e % n] += std::norm(g[e]);
        ++blocks;
    });
    const double denom = static_cast<double>(blocks) * static_cast<double>(code.span());
    for (double& v : acc) v /= denom;
    return acc;
}

CodeMetrics compute_metrics(const DispersionSet& code, const Constellation& c,
                            const MinDetOptions& opts) {
    CodeMetrics out;
    MinDetResult md = min_determinant(code, c, opts);
    out.min_determinant = md.value;
    out.argmin_x1 = std::move(md.x1);
    out.argmin_x2 = std::move(md.x2);
    out.diversity_order = diversity_order(code, c, opts);
    out.p_zero = p_zero(code, c, opts.budget);
    out.per_antenna_power = per_antenna_power(code, c, opts.budget);
    return out;
}

AngleResult optimize_angle(const DispersionSet& code, const Constellation& base,
                           const AngleGrid& grid, const MinDetOptions& opts, bool record_curve) {
    if (grid.step_deg <= 0.0 || grid.hi_deg < grid.lo_deg) {
        throw DomainError("optimize_angle: empty or descending grid");
    }
    const auto points = static_cast<std::size_t>(
                            std::floor((grid.hi_deg - grid.lo_deg) / grid.step_deg + 1e-9)) +
                        1;

    AngleResult out;
    out.min_det = -kInf;

    if (record_curve) {
        out.curve.resize(points);
        const std::size_t workers = std::max<std::size_t>(1, std::min(opts.workers, points));
        auto worker = [&](std::size_t w) {
            MinDetOptions inner = opts;
            inner.workers = 1;
            inner.abort_below = -1.0;
            for (std::size_t i = w; i < points; i += workers) {
                const double theta = grid.lo_deg + static_cast<double>(i) * grid.step_deg;
                out.curve[i] = {theta, min_determinant(code, base.rotated(theta), inner).value};
            }
        };
        if (workers == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker, w);
            for (auto& t : pool) t.join();
        }
        for (const AnglePoint& p : out.curve) {
            if (p.min_det > out.min_det * (1.0 + 1e-12) || out.min_det < 0.0) {
                out.min_det = p.min_det;
                out.theta_deg = p.theta_deg;
            }
        }
        return out;
    }

    for (std::size_t i = 0; i < points; ++i) {
        const double theta = grid.lo_deg + static_cast<double>(i) * grid.step_deg;
        MinDetOptions inner = opts;
        inner.abort_below = out.min_det; // grid points that cannot win are abandoned
        const MinDetResult md = min_determinant(code, base.rotated(theta), inner);
        // relative epsilon so ulp-level ties keep the smallest theta
        if (!md.aborted && (md.value > out.min_det * (1.0 + 1e-12) || out.min_det < 0.0)) {
            out.min_det = md.value;
            out.theta_deg = theta;
        }
    }
    return out;
}

EnergyConvention convention_from_string(const std::string& s) {
    if (s == "integer") return EnergyConvention::integer_grid;
    if (s == "unit") return EnergyConvention::unit_energy;
    if (s == "power") return EnergyConvention::unit_power;
    throw ConfigError("unknown energy convention '" + s + "' (integer|unit|power)");
}

Constellation normalized_for(const Constellation& c, const DispersionSet& code,
                             EnergyConvention conv) {
    double target = 1.0;
    switch (conv) {
    case EnergyConvention::unit_energy:
        target = 1.0;
        break;
    case EnergyConvention::unit_power:
        target = static_cast<double>(code.span()) / static_cast<double>(code.n_symbols());
        break;
    case EnergyConvention::integer_grid:
        // odd-integer lattice energy 2(m-1)/3 for square QAM; PSK stays unit
        if (c.name().rfind("qam", 0) == 0) {
            target = 2.0 * (static_cast<double>(c.size()) - 1.0) / 3.0;
        }
        break;
    }
    return c.scaled(std::sqrt(target / c.average_energy()));
}

} // namespace stbc

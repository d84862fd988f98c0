#include "stbc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "stbc/chansim.hpp"
#include "stbc/construct.hpp"
#include "stbc/decode.hpp"
#include "stbc/errors.hpp"
#include "stbc/metrics.hpp"
#include "stbc/modem.hpp"

namespace stbc {

using nlohmann::json;

namespace {

const char* const kKnownKeys[] = {"code",       "constellation", "snr_db",     "n_rx",
                                  "max_blocks", "target_errors", "master_seed", "workers"};

bool is_builtin_family(const std::string& ref) {
    return ref == "alamouti" || ref == "ostbc34" || ref == "mdc4" || ref == "mdc8";
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

SimConfig SimConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    for (const auto& [key, value] : doc.items()) {
        (void)value;
        if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) ==
            std::end(kKnownKeys)) {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    SimConfig cfg;
    try {
        cfg.code = doc.at("code").get<std::string>();
        cfg.constellation = doc.at("constellation").get<std::string>();
        cfg.snr_db = doc.at("snr_db").get<std::vector<double>>();
        if (doc.contains("n_rx")) cfg.n_rx = doc.at("n_rx").get<std::size_t>();
        if (doc.contains("max_blocks")) cfg.max_blocks = doc.at("max_blocks").get<std::uint64_t>();
        if (doc.contains("target_errors"))
            cfg.target_errors = doc.at("target_errors").get<std::uint64_t>();
        if (doc.contains("master_seed"))
            cfg.master_seed = doc.at("master_seed").get<std::uint64_t>();
        if (doc.contains("workers")) cfg.workers = doc.at("workers").get<std::size_t>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

SimConfig SimConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string SimConfig::to_json_text() const {
    json doc;
    doc["code"] = code;
    doc["constellation"] = constellation;
    doc["snr_db"] = snr_db;
    doc["n_rx"] = n_rx;
    doc["max_blocks"] = max_blocks;
    doc["target_errors"] = target_errors;
    doc["master_seed"] = master_seed;
    doc["workers"] = workers;
    return doc.dump(2) + "\n";
}

void SimConfig::validate() const {
    if (code.empty()) throw ConfigError("config: empty code reference");
    if (constellation.empty()) throw ConfigError("config: empty constellation");
    if (snr_db.empty()) throw ConfigError("config: snr_db list is empty");
    if (max_blocks < 1) throw ConfigError("config: max_blocks must be >= 1");
    if (target_errors < 1) throw ConfigError("config: target_errors must be >= 1");
    if (n_rx < 1) throw ConfigError("config: n_rx must be >= 1");
}

DispersionSet resolve_code(const std::string& ref) {
    if (is_builtin_family(ref)) return builtin_code(ref);
    return DispersionSet::load(ref);
}

namespace {

struct TrialContext {
    const DispersionSet& code;
    const ExpandedCode& expanded;
    const Constellation& constellation;
    std::size_t n_rx;
    double rho;
    std::uint64_t master_seed;
    std::size_t snr_index;
};

bool run_trial(const TrialContext& ctx, std::uint64_t trial) {
    Rng rng = Rng::stream(ctx.master_seed, ctx.snr_index, trial);
    const ChannelRealization h = rayleigh(ctx.code.n_tx(), ctx.n_rx, rng);
    const std::size_t m = ctx.constellation.size(); // power of two
    const std::size_t k = ctx.code.n_symbols();
    SymbolVector x(k);
    for (std::size_t q = 0; q < k; ++q)
        x[q] = ctx.constellation.point(rng.next_u64() & (m - 1));
    const RealMatrix heq = ctx.expanded.equivalent_channel(h);
    const ReceivedBlock r = transmit_through(heq, x, ctx.code.n_tx(), ctx.code.span(),
                                             ctx.n_rx, ctx.rho, &rng);
    const SymbolVector decoded =
        ml_decode_grouped(ctx.code, heq, r, ctx.constellation, ctx.rho);
    for (std::size_t q = 0; q < k; ++q)
        if (decoded[q] != x[q]) return true;
    return false;
}

} // namespace

SimResult run_bler(const SimConfig& cfg) {
    cfg.validate();
    const DispersionSet code = resolve_code(cfg.code);
    const StructureReport structure = classify(code, 1e-10);
    if (structure.classification == Classification::unstructured) {
        throw ConfigError("run_bler: code '" + cfg.code +
                          "' passes neither check_ostbc nor check_mdcqo");
    }
    const Constellation constellation =
        Constellation::from_spec(cfg.constellation, QamNorm::unit_energy);
    const ExpandedCode expanded(code);
    const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
    constexpr std::uint64_t kChunk = 256; // trials per worker per round

    SimResult result;
    result.master_seed = cfg.master_seed;
    result.code_identity = cfg.code + " (n_tx=" + std::to_string(code.n_tx()) +
                           ", T=" + std::to_string(code.span()) +
                           ", K=" + std::to_string(code.n_symbols()) + ")";
    result.config_hash = fnv1a_hex(cfg.to_json_text());

    for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
        const double rho = std::pow(10.0, cfg.snr_db[si] / 10.0);
        const TrialContext ctx{code, expanded, constellation, cfg.n_rx,
                               rho,  cfg.master_seed, si};
        std::uint64_t blocks = 0, errors = 0;
        while (blocks < cfg.max_blocks && errors < cfg.target_errors) {
            const std::uint64_t round =
                std::min<std::uint64_t>(workers * kChunk, cfg.max_blocks - blocks);
            if (workers == 1) {
                for (std::uint64_t t = 0; t < round; ++t)
                    errors += run_trial(ctx, blocks + t) ? 1 : 0;
            } else {
                const std::uint64_t per = (round - 1) / workers + 1;
                std::vector<std::uint64_t> errs(workers, 0);
                std::vector<std::thread> pool;
                for (std::size_t w = 0; w < workers; ++w) {
                    const std::uint64_t lo = std::min<std::uint64_t>(round, w * per);
                    const std::uint64_t hi = std::min<std::uint64_t>(round, (w + 1) * per);
                    if (lo >= hi) continue;
                    pool.emplace_back([&, lo, hi, w] {
                        std::uint64_t e = 0;
                        for (std::uint64_t t = lo; t < hi; ++t)
                            e += run_trial(ctx, blocks + t) ? 1 : 0;
                        errs[w] = e;
                    });
                }
                for (auto& t : pool) t.join();
                for (std::uint64_t e : errs) errors += e;
            }
            blocks += round;
        }
        SnrRecord rec;
        rec.rho_db = cfg.snr_db[si];
        rec.blocks = blocks;
        rec.errors = errors;
        rec.bler = static_cast<double>(errors) / static_cast<double>(blocks);
        std::tie(rec.ci_lo, rec.ci_hi) = wilson_interval(errors, blocks);
        result.points.push_back(rec);
    }
    return result;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    const double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2n = z * z / n;
    const double denom = 1.0 + z2n;
    const double center = (p + 0.5 * z2n) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
    // roundoff must not push the estimate outside its own interval
    const double lo = std::min(std::max(0.0, center - half), p);
    const double hi = std::max(std::min(1.0, center + half), p);
    return {lo, hi};
}

void emit_csv(const SimResult& result, std::ostream& out) {
    out << "rho_db,blocks,errors,bler,ci_lo,ci_hi\n";
    char line[160];
    for (const SnrRecord& r : result.points) {
        std::snprintf(line, sizeof(line), "%.2f,%llu,%llu,%.6e,%.6e,%.6e\n", r.rho_db,
                      static_cast<unsigned long long>(r.blocks),
                      static_cast<unsigned long long>(r.errors), r.bler, r.ci_lo, r.ci_hi);
        out << line;
    }
}

void emit_csv(const SimResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    emit_csv(result, out);
    out.flush();
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

std::vector<SnrRecord> parse_csv(std::istream& in) {
    std::vector<SnrRecord> out;
    std::string line;
    if (!std::getline(in, line) || line.rfind("rho_db,", 0) != 0) {
        throw ConfigError("parse_csv: missing header row");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        SnrRecord r;
        unsigned long long blocks = 0, errors = 0;
        if (std::sscanf(line.c_str(), "%lf,%llu,%llu,%lf,%lf,%lf", &r.rho_db, &blocks, &errors,
                        &r.bler, &r.ci_lo, &r.ci_hi) != 6) {
            throw ConfigError("parse_csv: malformed row '" + line + "'");
        }
        r.blocks = blocks;
        r.errors = errors;
        out.push_back(r);
    }
    return out;
}

} // namespace stbc

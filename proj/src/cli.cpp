#include "stbc/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "stbc/construct.hpp"
#include "stbc/errors.hpp"
#include "stbc/harness.hpp"
#include "stbc/metrics.hpp"
#include "stbc/modem.hpp"

namespace stbc {

namespace {

std::vector<std::size_t> parse_column_list(const std::string& text) {
    std::vector<std::size_t> cols;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(pos, next - pos);
        try {
            std::size_t used = 0;
            cols.push_back(std::stoul(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("bad column list entry '" + tok + "'");
        }
        pos = next + 1;
    }
    if (cols.empty()) throw ConfigError("empty column list");
    return cols;
}

AngleGrid parse_grid(const std::string& text) {
    AngleGrid g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &g.lo_deg, &g.hi_deg, &g.step_deg) != 3) {
        throw ConfigError("grid must be lo:hi:step, got '" + text + "'");
    }
    return g;
}

// precedence: CLI flag > STBC_WORKERS > config value
std::size_t resolve_workers(std::size_t cfg_value, bool flag_given, std::size_t flag_value) {
    std::size_t value = cfg_value;
    if (const char* env = std::getenv("STBC_WORKERS")) {
        char* end = nullptr;
        const unsigned long parsed = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || parsed == 0) {
            throw ConfigError("STBC_WORKERS must be a positive integer, got '" +
                              std::string(env) + "'");
        }
        value = parsed;
    }
    if (flag_given) value = flag_value;
    return value;
}

Constellation build_constellation(const std::string& spec, const DispersionSet& code,
                                  const std::string& convention) {
    const EnergyConvention conv = convention_from_string(convention);
    const Constellation base = Constellation::from_spec(spec, QamNorm::unit_energy);
    return normalized_for(base, code, conv);
}

int cmd_construct(const std::string& family, const std::string& drop, const std::string& out) {
    DispersionSet code = builtin_code(family);
    if (!drop.empty()) code = remove_columns(code, parse_column_list(drop));
    code.save(out);
    std::cout << "wrote " << out << " (n_tx=" << code.n_tx() << ", T=" << code.span()
              << ", K=" << code.n_symbols() << ", rate=" << code.rate().num << "/"
              << code.rate().den << ")\n";
    return 0;
}

int cmd_check(const std::string& code_ref, double tol) {
    const DispersionSet code = resolve_code(code_ref);
    const StructureReport report = classify(code, tol);
    std::cout << "classification: " << to_string(report.classification) << "\n"
              << "max_residual: " << report.max_residual << "\n"
              << "unit_norm: " << (report.unit_norm_ok ? "yes" : "no (diversity note)") << "\n"
              << "rate: " << code.rate().num << "/" << code.rate().den << "\n";
    for (const Violation& v : report.violations) {
        std::cout << "violation: " << v.constraint << " q=" << v.q << " p=" << v.p
                  << " residual=" << v.residual << "\n";
    }
    return 0;
}

int cmd_mindet(const std::string& code_ref, const std::string& const_spec,
               const std::string& convention, std::size_t budget, std::size_t workers) {
    const DispersionSet code = resolve_code(code_ref);
    const Constellation c = build_constellation(const_spec, code, convention);
    MinDetOptions opts;
    opts.budget = budget;
    opts.workers = workers;
    const MinDetResult r = min_determinant(code, c, opts);
    std::printf("min_det: %.6f\n", r.value);
    std::printf("convention: %s (E[|p|^2] = %.6f)\n", convention.c_str(), c.average_energy());
    std::printf("argmin pair:\n");
    for (std::size_t q = 0; q < r.x1.size(); ++q) {
        std::printf("  x%zu: (%.4f%+.4fi) vs (%.4f%+.4fi)\n", q + 1, r.x1[q].real(),
                    r.x1[q].imag(), r.x2[q].real(), r.x2[q].imag());
    }
    return 0;
}

int cmd_optimize_angle(const std::string& code_ref, const std::string& base_spec,
                       const std::string& grid_text, const std::string& out,
                       const std::string& convention, std::size_t workers) {
    const DispersionSet code = resolve_code(code_ref);
    const Constellation base = build_constellation(base_spec, code, convention);
    const AngleGrid grid = parse_grid(grid_text);
    MinDetOptions opts;
    opts.workers = workers;
    const bool record = !out.empty();
    const AngleResult r = optimize_angle(code, base, grid, opts, record);
    if (record) {
        std::ofstream csv(out);
        if (!csv) throw ConfigError("cannot open '" + out + "' for writing");
        csv << "theta_deg,min_det\n";
        char line[64];
        for (const AnglePoint& p : r.curve) {
            std::snprintf(line, sizeof(line), "%.4f,%.9e\n", p.theta_deg, p.min_det);
            csv << line;
        }
    }
    std::printf("theta_star: %.4f deg\nmin_det: %.6f\n", r.theta_deg, r.min_det);
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out, bool workers_given,
                 std::size_t workers_flag) {
    SimConfig cfg = SimConfig::load(config_path);
    cfg.workers = resolve_workers(cfg.workers, workers_given, workers_flag);
    const SimResult result = run_bler(cfg);
    emit_csv(result, out);
    std::cout << "code: " << result.code_identity << "\n"
              << "config_hash: " << result.config_hash << "\n";
    for (const SnrRecord& p : result.points) {
        std::printf("rho=%.2f dB  blocks=%llu  errors=%llu  bler=%.3e  [%.3e, %.3e]\n",
                    p.rho_db, static_cast<unsigned long long>(p.blocks),
                    static_cast<unsigned long long>(p.errors), p.bler, p.ci_lo, p.ci_hi);
    }
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_power(const std::string& code_ref, const std::string& const_spec,
              const std::string& convention) {
    const DispersionSet code = resolve_code(code_ref);
    const Constellation c = build_constellation(const_spec, code, convention);
    const std::vector<double> power = per_antenna_power(code, c);
    const double pz = p_zero(code, c);
    std::printf("p_zero: %.6f\n", pz);
    for (std::size_t n = 0; n < power.size(); ++n)
        std::printf("antenna %zu power: %.9f\n", n + 1, power[n]);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"MDC-QOSTBC construction, certification and evaluation toolkit"};
    app.require_subcommand(1);

    std::string family, drop, out, code_ref, const_spec, grid_text, config_path;
    std::string convention = "unit";
    double tol = 1e-10;
    std::size_t budget = std::size_t{1} << 24;
    std::size_t workers = 1;

    auto* construct = app.add_subcommand("construct", "build a code and write it as JSON");
    construct->add_option("--family", family, "alamouti|ostbc34|mdc4|mdc8")->required();
    construct->add_option("--drop-columns", drop, "comma-separated 1-based antenna columns");
    construct->add_option("--out", out, "output JSON path")->required();

    auto* check = app.add_subcommand("check", "certify the algebraic structure of a code");
    check->add_option("--code", code_ref, "code JSON path or builtin family")->required();
    check->add_option("--tol", tol, "residual tolerance");

    auto* mindet = app.add_subcommand("mindet", "exhaustive minimum determinant");
    mindet->add_option("--code", code_ref)->required();
    mindet->add_option("--const", const_spec, "constellation spec, e.g. qam4@13.29")->required();
    mindet->add_option("--convention", convention, "integer|unit|power");
    mindet->add_option("--budget", budget);
    mindet->add_option("--workers", workers);

    auto* opt = app.add_subcommand("optimize-angle", "grid search of the rotation angle");
    opt->add_option("--code", code_ref)->required();
    opt->add_option("--base", const_spec, "base constellation, e.g. qam4")->required();
    opt->add_option("--grid", grid_text, "lo:hi:step in degrees")->required();
    opt->add_option("--out", out, "per-angle CSV (theta_deg,min_det)");
    opt->add_option("--convention", convention, "integer|unit|power");
    opt->add_option("--workers", workers);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo BLER sweep");
    simulate->add_option("--config", config_path, "SimConfig JSON")->required();
    simulate->add_option("--out", out, "result CSV path")->required();
    auto* workers_opt = simulate->add_option("--workers", workers, "override config/env workers");

    auto* power = app.add_subcommand("power", "per-antenna power and P_o");
    power->add_option("--code", code_ref)->required();
    power->add_option("--const", const_spec)->required();
    power->add_option("--convention", convention, "integer|unit|power");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (construct->parsed()) return cmd_construct(family, drop, out);
        if (check->parsed()) return cmd_check(code_ref, tol);
        if (mindet->parsed()) return cmd_mindet(code_ref, const_spec, convention, budget, workers);
        if (opt->parsed())
            return cmd_optimize_angle(code_ref, const_spec, grid_text, out, convention, workers);
        if (simulate->parsed())
            return cmd_simulate(config_path, out, workers_opt->count() > 0, workers);
        if (power->parsed()) return cmd_power(code_ref, const_spec, convention);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: usage: no subcommand\n";
    return 2;
}

} // namespace stbc

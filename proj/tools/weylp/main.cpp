#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "weylp/bounds.hpp"
#include "weylp/config.hpp"
#include "weylp/errors.hpp"
#include "weylp/persistence.hpp"
#include "weylp/records.hpp"
#include "weylp/sampler.hpp"

namespace {

using namespace weylp;

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(12) << v;
    return out.str();
}

void finish_record(RunRecord& record, std::chrono::steady_clock::time_point t0) {
    record.build_id = build_identifier();
    record.timestamp = current_timestamp_utc();
    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const ExperimentConfig& cfg, const RunRecord& record) {
    if (!cfg.out.empty()) write_record_file(cfg.out, cfg.format, record);
    std::cout << "# build " << record.build_id << ", " << record.timestamp << ", "
              << std::setprecision(3) << record.duration_seconds << " s\n";
}

void print_estimate(const LabeledEstimate& e) {
    std::cout << "  ";
    for (const auto& [k, v] : e.params) std::cout << k << "=" << v << " ";
    std::cout << std::setprecision(6) << "p_hat=" << e.estimate.p_hat << " ci=["
              << e.estimate.ci_low << ", " << e.estimate.ci_high << "]"
              << " successes=" << e.estimate.successes << "/" << e.estimate.trials << "\n";
}

int run_estimate_b(ExperimentConfig cfg) {
    if (cfg.T_list.empty()) cfg.T_list = {10.0, 15.0, 20.0, 25.0};
    const auto t0 = std::chrono::steady_clock::now();
    const KernelSpec kernel =
        cfg.kernel == "sech" ? KernelSpec::sech() : KernelSpec::gauss_limit();
    SampleOptions opts;
    opts.workers = resolve_workers(cfg.workers);

    const std::vector<PersistenceEstimate> estimates =
        sweep_T(kernel, cfg.T_list, cfg.step, cfg.trials, RngStream{cfg.seed, 0}, opts);

    RunRecord record;
    record.config = cfg;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        record.estimates.push_back(LabeledEstimate{
            {{"kernel", cfg.kernel}, {"T", format_double(cfg.T_list[i])}}, estimates[i]});
        print_estimate(record.estimates.back());
    }
    const ExponentFit fit = fit_exponent(estimates);
    record.fits.push_back(LabeledFit{"T_sweep", fit});
    record.summary["b_hat"] = -fit.slope;
    record.summary["b_stderr"] = fit.slope_stderr;
    record.summary["intercept"] = fit.intercept;
    record.summary["r2"] = fit.r_squared;

    std::cout << std::setprecision(6) << "b_hat = " << -fit.slope << " +- " << fit.slope_stderr
              << " (R^2 " << fit.r_squared << ", kernel " << cfg.kernel << ")\n";
    finish_record(record, t0);
    emit(cfg, record);
    return 0;
}

int run_weyl_exponent(ExperimentConfig cfg) {
    if (cfg.n_list.empty()) cfg.n_list = {64, 100, 196, 256, 400};
    const auto t0 = std::chrono::steady_clock::now();
    SampleOptions opts;
    opts.workers = resolve_workers(cfg.workers);

    RunRecord record;
    record.config = cfg;

    // Distinct stream-index blocks per side so "both" never reuses a stream.
    const bool want_half = cfg.side == "half" || cfg.side == "both";
    const bool want_whole = cfg.side == "whole" || cfg.side == "both";
    ExponentFit fit_half, fit_whole;

    auto run_side = [&](Side side, const char* label, std::uint64_t base) {
        const std::vector<PersistenceEstimate> estimates =
            sweep_n(side, cfg.n_list, cfg.step, cfg.trials,
                    RngStream{cfg.seed, base * kStreamBlock}, opts);
        for (std::size_t i = 0; i < estimates.size(); ++i) {
            record.estimates.push_back(LabeledEstimate{
                {{"side", label}, {"n", std::to_string(cfg.n_list[i])}}, estimates[i]});
            print_estimate(record.estimates.back());
        }
        const ExponentFit fit = fit_exponent(estimates);
        record.fits.push_back(LabeledFit{label, fit});
        record.summary[std::string("slope_") + label] = fit.slope;
        record.summary[std::string("slope_stderr_") + label] = fit.slope_stderr;
        std::cout << std::setprecision(6) << label << ": slope = " << fit.slope << " +- "
                  << fit.slope_stderr << " (R^2 " << fit.r_squared << ")\n";
        return fit;
    };

    if (want_half) fit_half = run_side(Side::HalfLine, "half", 0);
    if (want_whole) fit_whole = run_side(Side::WholeLine, "whole", 512);

    if (want_half && want_whole) {
        const double ratio = fit_whole.slope / fit_half.slope;
        const double rel_h = fit_half.slope_stderr / std::abs(fit_half.slope);
        const double rel_w = fit_whole.slope_stderr / std::abs(fit_whole.slope);
        const double ratio_stderr = std::abs(ratio) * std::sqrt(rel_h * rel_h + rel_w * rel_w);
        record.summary["slope_ratio"] = ratio;
        record.summary["slope_ratio_stderr"] = ratio_stderr;
        std::cout << "whole/half slope ratio = " << ratio << " +- " << ratio_stderr << "\n";
    }
    finish_record(record, t0);
    emit(cfg, record);
    return 0;
}

int run_verify_bounds(ExperimentConfig cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord record;
    record.config = cfg;
    record.reports = default_verification_suite();
    bool all_pass = true;
    for (const BoundReport& r : record.reports) {
        all_pass = all_pass && r.pass;
        std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(24) << r.name
                  << std::setprecision(6) << " worst_margin=" << r.worst_margin;
        for (const auto& [k, v] : r.thresholds)
            if (k.find("smallest_passing") != std::string::npos ||
                k.find("threshold") != std::string::npos)
                std::cout << " " << k << "=" << v;
        std::cout << "\n";
    }
    record.summary["reports_total"] = static_cast<double>(record.reports.size());
    record.summary["reports_passed"] = static_cast<double>(
        std::count_if(record.reports.begin(), record.reports.end(),
                      [](const BoundReport& r) { return r.pass; }));
    finish_record(record, t0);
    emit(cfg, record);
    return all_pass ? 0 : static_cast<int>(ErrorCode::VerificationFailed);
}

int run_decompose(ExperimentConfig cfg) {
    if (cfg.n_list.empty()) cfg.n_list = {64, 100, 196};
    const auto t0 = std::chrono::steady_clock::now();
    SampleOptions opts;
    opts.workers = resolve_workers(cfg.workers);

    RunRecord record;
    record.config = cfg;
    bool all_consistent = true;
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        const std::int64_t n = cfg.n_list[i];
        const ProductDecomposition d = product_decomposition(
            n, cfg.step, cfg.trials, RngStream{cfg.seed, 4 * i * kStreamBlock}, opts);
        const char* windows[4] = {"A", "B", "C", "full"};
        const PersistenceEstimate* parts[4] = {&d.part_a, &d.part_b, &d.part_c, &d.full};
        for (int w = 0; w < 4; ++w) {
            record.estimates.push_back(LabeledEstimate{
                {{"n", std::to_string(n)}, {"window", windows[w]}}, *parts[w]});
            print_estimate(record.estimates.back());
        }
        const double root = std::sqrt(static_cast<double>(n));
        // Slepian consistency: the full-interval probability dominates the
        // product of the window probabilities up to Monte Carlo noise.
        const double product = d.part_a.p_hat * d.part_b.p_hat * d.part_c.p_hat;
        auto half_width = [](const PersistenceEstimate& e) {
            return (e.ci_high - e.ci_low) / 2.0;
        };
        double rel2 = 0.0;
        bool product_positive = true;
        for (const PersistenceEstimate* e : {&d.part_a, &d.part_b, &d.part_c}) {
            if (e->p_hat <= 0.0) {
                product_positive = false;
                break;
            }
            const double rel = half_width(*e) / e->p_hat;
            rel2 += rel * rel;
        }
        const double product_half = product_positive ? product * std::sqrt(rel2) : 0.0;
        const double combined = std::sqrt(product_half * product_half +
                                          half_width(d.full) * half_width(d.full));
        const double slepian_margin = d.full.p_hat - (product - 3.0 * combined);
        all_consistent = all_consistent && slepian_margin >= 0.0;

        const std::string suffix = "_" + std::to_string(n);
        record.summary["slepian_margin" + suffix] = slepian_margin;
        if (d.part_b.successes > 0)
            record.summary["neglog_B_over_sqrt_n" + suffix] = -d.part_b.log_p / root;
        if (d.part_c.successes > 0)
            record.summary["neglog_C_over_sqrt_n" + suffix] = -d.part_c.log_p / root;
        std::cout << std::setprecision(6) << "n=" << n << " slepian_margin=" << slepian_margin
                  << (slepian_margin >= 0.0 ? " (consistent)" : " (VIOLATED)") << "\n";
    }
    finish_record(record, t0);
    emit(cfg, record);
    return all_consistent ? 0 : static_cast<int>(ErrorCode::VerificationFailed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Persistence exponents of random Weyl polynomials: Monte Carlo estimators "
                 "and certified inequality sweeps"};
    app.require_subcommand(1);

    ExperimentConfig cli;
    std::string config_path;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--step", cli.step, "grid step (default 0.05)");
        cmd->add_option("--trials", cli.trials, "Monte Carlo trials per point");
        cmd->add_option("--seed", cli.seed, "master seed (fixed default for reproducibility)");
        cmd->add_option("--workers", cli.workers, "worker threads, 0 = all cores");
        cmd->add_option("--out", cli.out, "result file path");
        cmd->add_option("--format", cli.format, "output format: jsonl or csv");
        cmd->add_option("--config", config_path, "key = value config file; flags override it");
    };

    CLI::App* est = app.add_subcommand("estimate-b", "stationary persistence exponent from a T-sweep");
    est->add_option("--kernel", cli.kernel, "gauss or sech");
    est->add_option("--T", cli.T_list, "T values to sweep")->delimiter(',');
    add_common(est);

    CLI::App* weyl = app.add_subcommand("weyl-exponent", "finite-n exponent from an n-sweep");
    weyl->add_option("--side", cli.side, "half, whole or both");
    weyl->add_option("--n", cli.n_list, "degrees to sweep")->delimiter(',');
    add_common(weyl);

    CLI::App* verify = app.add_subcommand("verify-bounds", "run every inequality report");
    add_common(verify);

    CLI::App* decompose =
        app.add_subcommand("decompose", "window product decomposition + consistency check");
    decompose->add_option("--n", cli.n_list, "even degrees to decompose")->delimiter(',');
    add_common(decompose);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(weylp::ErrorCode::ConfigInvalid);
    }

    CLI::App* active = est->parsed() ? est
                       : weyl->parsed() ? weyl
                       : verify->parsed() ? verify
                                          : decompose;

    try {
        // Layering: defaults < config file < explicit flags.
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = load_config_file(config_path);
        cfg.subcommand = active->get_name();
        auto given = [&](const char* flag) {
            const CLI::Option* opt = active->get_option_no_throw(flag);
            return opt != nullptr && opt->count() > 0;
        };
        if (given("--kernel")) cfg.kernel = cli.kernel;
        if (given("--side")) cfg.side = cli.side;
        if (given("--n")) cfg.n_list = cli.n_list;
        if (given("--T")) cfg.T_list = cli.T_list;
        if (given("--step")) cfg.step = cli.step;
        if (given("--trials")) cfg.trials = cli.trials;
        if (given("--seed")) cfg.seed = cli.seed;
        if (given("--workers")) cfg.workers = cli.workers;
        if (given("--out")) cfg.out = cli.out;
        if (given("--format")) cfg.format = cli.format;
        validate_config(cfg);

        if (active == est) return run_estimate_b(cfg);
        if (active == weyl) return run_weyl_exponent(cfg);
        if (active == verify) return run_verify_bounds(cfg);
        return run_decompose(cfg);
    } catch (const weylp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(weylp::ErrorCode::ConfigInvalid);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
}

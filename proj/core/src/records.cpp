#include "weylp/records.hpp"

#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "weylp/errors.hpp"

#ifndef WEYLP_GIT_REV
#define WEYLP_GIT_REV "unknown"
#endif

namespace weylp {

namespace {

using nlohmann::json;

// JSON has no -inf; zero-success estimates carry log_p = null.
json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

json config_to_json(const ExperimentConfig& c) {
    return json{{"schema_version", c.schema_version},
                {"subcommand", c.subcommand},
                {"kernel", c.kernel},
                {"side", c.side},
                {"n_list", c.n_list},
                {"T_list", c.T_list},
                {"step", c.step},
                {"trials", c.trials},
                {"seed", c.seed},
                {"workers", c.workers},
                {"out", c.out},
                {"format", c.format}};
}

json estimate_to_json(const LabeledEstimate& e) {
    json params(json::value_t::object);
    for (const auto& [k, v] : e.params) params[k] = v;
    return json{{"type", "estimate"},
                {"params", params},
                {"trials", e.estimate.trials},
                {"successes", e.estimate.successes},
                {"p_hat", e.estimate.p_hat},
                {"ci", json::array({e.estimate.ci_low, e.estimate.ci_high})},
                {"log_p", finite_or_null(e.estimate.log_p)},
                {"scale", e.estimate.scale},
                {"seed", json::array({e.estimate.seed.master_seed, e.estimate.seed.stream_index})}};
}

json fit_to_json(const LabeledFit& f) {
    json points = json::array();
    for (const FitPoint& p : f.fit.points)
        points.push_back(json::array({p.scale, p.log_p, p.weight}));
    return json{{"type", "fit"},
                {"label", f.label},
                {"slope", f.fit.slope},
                {"stderr", f.fit.slope_stderr},
                {"intercept", f.fit.intercept},
                {"r2", f.fit.r_squared},
                {"points", points}};
}

json report_to_json(const BoundReport& r) {
    return json{{"type", "report"},
                {"name", r.name},
                {"swept_box", r.swept_box},
                {"worst_margin", finite_or_null(r.worst_margin)},
                {"worst_point", r.worst_point},
                {"pass", r.pass},
                {"tolerance", r.tolerance},
                {"thresholds", r.thresholds}};
}

}  // namespace

std::string current_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string build_identifier() { return WEYLP_GIT_REV; }

void write_jsonl(std::ostream& out, const RunRecord& record) {
    json run{{"type", "run"},
             {"schema_version", record.config.schema_version},
             {"config", config_to_json(record.config)},
             {"build_id", record.build_id},
             {"summary", record.summary}};
    out << run.dump() << "\n";
    for (const LabeledEstimate& e : record.estimates) out << estimate_to_json(e).dump() << "\n";
    for (const LabeledFit& f : record.fits) out << fit_to_json(f).dump() << "\n";
    for (const BoundReport& r : record.reports) out << report_to_json(r).dump() << "\n";
}

void write_csv(std::ostream& out, const RunRecord& record) {
    std::ostringstream fmt;
    fmt.precision(17);
    if (!record.estimates.empty()) {
        out << "record,label,scale,trials,successes,p_hat,ci_low,ci_high,log_p\n";
        for (const LabeledEstimate& e : record.estimates) {
            std::string label;
            for (const auto& [k, v] : e.params) {
                if (!label.empty()) label += ';';
                label += k + "=" + v;
            }
            fmt.str("");
            fmt << "estimate," << label << ',' << e.estimate.scale << ',' << e.estimate.trials
                << ',' << e.estimate.successes << ',' << e.estimate.p_hat << ','
                << e.estimate.ci_low << ',' << e.estimate.ci_high << ',';
            if (std::isfinite(e.estimate.log_p)) fmt << e.estimate.log_p;
            out << fmt.str() << "\n";
        }
    }
    if (!record.reports.empty()) {
        out << "record,name,worst_margin,tolerance,pass\n";
        for (const BoundReport& r : record.reports) {
            fmt.str("");
            fmt << "report," << r.name << ',' << r.worst_margin << ',' << r.tolerance << ','
                << (r.pass ? 1 : 0);
            out << fmt.str() << "\n";
        }
    }
    if (!record.fits.empty()) {
        out << "record,label,slope,stderr,intercept,r2\n";
        for (const LabeledFit& f : record.fits) {
            fmt.str("");
            fmt << "fit," << f.label << ',' << f.fit.slope << ',' << f.fit.slope_stderr << ','
                << f.fit.intercept << ',' << f.fit.r_squared;
            out << fmt.str() << "\n";
        }
    }
}

void write_record_file(const std::string& path, const std::string& format,
                       const RunRecord& record) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw ConfigInvalidError("cannot open output file '" + path + "'");
    if (format == "csv")
        write_csv(out, record);
    else
        write_jsonl(out, record);
}

}  // namespace weylp

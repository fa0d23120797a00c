#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "weylp/bounds.hpp"
#include "weylp/config.hpp"
#include "weylp/persistence.hpp"

namespace weylp {

// A fit together with the label the harness gave it (e.g. which side of the
// line it belongs to).
struct LabeledFit {
    std::string label;
    ExponentFit fit;
};

struct LabeledEstimate {
    std::map<std::string, std::string> params;  // extra context, e.g. n / window
    PersistenceEstimate estimate;
};

// Everything one CLI invocation produced. The config snapshot, build id and
// all numeric payloads are reproducible bit-exactly from (config, seed);
// duration and timestamp are not and are kept out of the serialized payload.
struct RunRecord {
    ExperimentConfig config;
    std::string build_id;
    double duration_seconds = 0.0;
    std::string timestamp;  // ISO 8601 UTC
    std::vector<LabeledEstimate> estimates;
    std::vector<LabeledFit> fits;
    std::vector<BoundReport> reports;
    std::map<std::string, double> summary;  // headline numbers (b_hat, ratio, ...)
};

std::string current_timestamp_utc();
std::string build_identifier();

// Line-delimited JSON: one deterministic header line ({"type":"run", config,
// build id, schema_version, summary}), then one line per estimate, fit and
// report. Nothing wall-clock-dependent goes into the stream, so reruns of the
// same config + seed produce byte-identical files at any worker count.
void write_jsonl(std::ostream& out, const RunRecord& record);

// Flat projection for plotting: estimate rows, then report rows, then fit rows.
void write_csv(std::ostream& out, const RunRecord& record);

// Writes the chosen format ("jsonl" | "csv") to the path; throws ConfigInvalid
// when the file cannot be opened.
void write_record_file(const std::string& path, const std::string& format,
                       const RunRecord& record);

}  // namespace weylp

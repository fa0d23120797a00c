#include "weylp/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "weylp/errors.hpp"

namespace weylp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T>
T parse_number(const std::string& raw, const char* key) {
    std::istringstream in(trim(raw));
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof()) {
        throw ConfigInvalidError(std::string("config: bad value for '") + key + "': " + raw);
    }
    return value;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << line_no << ": expected 'key = value', got '" << line << "'";
            throw ConfigInvalidError(msg.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "schema_version") {
            config.schema_version = parse_number<int>(value, "schema_version");
        } else if (key == "subcommand") {
            config.subcommand = value;
        } else if (key == "kernel") {
            config.kernel = value;
        } else if (key == "side") {
            config.side = value;
        } else if (key == "n_list") {
            config.n_list.clear();
            for (const std::string& item : split_list(value))
                config.n_list.push_back(parse_number<std::int64_t>(item, "n_list"));
        } else if (key == "T_list") {
            config.T_list.clear();
            for (const std::string& item : split_list(value))
                config.T_list.push_back(parse_number<double>(item, "T_list"));
        } else if (key == "step") {
            config.step = parse_number<double>(value, "step");
        } else if (key == "trials") {
            config.trials = parse_number<std::uint64_t>(value, "trials");
        } else if (key == "seed") {
            config.seed = parse_number<std::uint64_t>(value, "seed");
        } else if (key == "workers") {
            config.workers = parse_number<unsigned>(value, "workers");
        } else if (key == "out") {
            config.out = value;
        } else if (key == "format") {
            config.format = value;
        } else {
            throw ConfigInvalidError("config: unknown key '" + key + "'");
        }
    }
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalidError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "schema_version = " << config.schema_version << "\n";
    out << "subcommand = " << config.subcommand << "\n";
    out << "kernel = " << config.kernel << "\n";
    out << "side = " << config.side << "\n";
    out << "n_list = ";
    for (std::size_t i = 0; i < config.n_list.size(); ++i)
        out << (i ? ", " : "") << config.n_list[i];
    out << "\n";
    out << "T_list = ";
    for (std::size_t i = 0; i < config.T_list.size(); ++i)
        out << (i ? ", " : "") << config.T_list[i];
    out << "\n";
    out << "step = " << config.step << "\n";
    out << "trials = " << config.trials << "\n";
    out << "seed = " << config.seed << "\n";
    out << "workers = " << config.workers << "\n";
    out << "out = " << config.out << "\n";
    out << "format = " << config.format << "\n";
    return out.str();
}

void validate_config(const ExperimentConfig& config) {
    if (config.schema_version != kSchemaVersion)
        throw ConfigInvalidError("config: unsupported schema_version");
    if (config.subcommand != "estimate-b" && config.subcommand != "weyl-exponent" &&
        config.subcommand != "verify-bounds" && config.subcommand != "decompose")
        throw ConfigInvalidError("config: unknown subcommand '" + config.subcommand + "'");
    if (config.kernel != "gauss" && config.kernel != "sech")
        throw ConfigInvalidError("config: kernel must be 'gauss' or 'sech'");
    if (config.side != "half" && config.side != "whole" && config.side != "both")
        throw ConfigInvalidError("config: side must be 'half', 'whole' or 'both'");
    if (!(config.step > 0.0)) throw ConfigInvalidError("config: step must be positive");
    if (config.trials < 1) throw ConfigInvalidError("config: trials must be >= 1");
    if (config.format != "jsonl" && config.format != "csv")
        throw ConfigInvalidError("config: format must be 'jsonl' or 'csv'");
}

}  // namespace weylp

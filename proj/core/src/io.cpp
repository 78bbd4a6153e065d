// io.cpp — deterministic CSV/JSON rendering

#include "mpcav/io.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mpcav/version.hpp"

namespace mpcav {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string hex_hash(std::uint64_t hash) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%016llx",
                  static_cast<unsigned long long>(hash));
    return buffer;
}

std::string sanitize_field(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}

std::string optional_double(const std::optional<double>& v) {
    return v ? format_double(*v) : "nan";
}

void append_metadata(std::string& out, const char* subcommand,
                     std::uint64_t config_hash) {
    out += "# mpcav ";
    out += kVersion;
    out += "\n# subcommand ";
    out += subcommand;
    out += "\n# config_hash ";
    out += hex_hash(config_hash);
    out += "\n";
}

ordered_json params_json(const ModelParams& p) {
    ordered_json j = {{"gamma", p.gamma}, {"kappa", p.kappa}, {"nbar", p.nbar},
                      {"eta", p.eta},     {"xi", p.xi}};
    if (p.omega) j["omega"] = *p.omega;
    if (p.Omega) j["rabi"] = *p.Omega;
    return j;
}

ordered_json obs_json(const ObservableSet& obs) {
    ordered_json j;
    j["mean_n"] = obs.mean_n;
    if (obs.g2)
        j["g2"] = *obs.g2;
    else
        j["g2"] = nullptr;
    j["p2"] = obs.p2;
    j["valid"] = obs.valid;
    return j;
}

} // namespace

std::optional<OutputFormat> parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    return std::nullopt;
}

std::string format_double(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

std::string render_sweep(const SweepResult& result, OutputFormat format,
                         std::uint64_t config_hash) {
    const SweepSpec& spec = result.spec;
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["tool"] = "mpcav";
        doc["version"] = kVersion;
        doc["subcommand"] = "sweep";
        doc["config_hash"] = hex_hash(config_hash);
        doc["axis"] = to_string(spec.axis);
        auto rows = ordered_json::array();
        for (const auto& row : result.rows) {
            ordered_json r;
            r["axis"] = to_string(spec.axis);
            r["value"] = row.axis_value;
            r["order"] = row.N;
            r["params"] = params_json(row.resolved);
            r["include_kappa_eta"] = spec.include_kappa_eta;
            r["n_max"] = row.n_max_used;
            r["observables"] = obs_json(row.obs);
            r["status"] = row.status;
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        return doc.dump(2) + "\n";
    }

    std::string out;
    append_metadata(out, "sweep", config_hash);
    out += "axis,value,order,eta,xi,nbar,kappa,gamma,include_kappa_eta,n_max,"
           "mean_n,g2,p2,valid,status\n";
    for (const auto& row : result.rows) {
        const ModelParams& p = row.resolved;
        out += to_string(spec.axis);
        out += ',' + format_double(row.axis_value);
        out += ',' + std::to_string(row.N);
        out += ',' + format_double(p.eta);
        out += ',' + format_double(p.xi);
        out += ',' + format_double(p.nbar);
        out += ',' + format_double(p.kappa);
        out += ',' + format_double(p.gamma);
        out += std::string(",") + (spec.include_kappa_eta ? "1" : "0");
        out += ',' + std::to_string(row.n_max_used);
        out += ',' + format_double(row.obs.mean_n);
        out += ',' + optional_double(row.obs.g2);
        out += ',' + format_double(row.obs.p2);
        out += std::string(",") + (row.obs.valid ? "1" : "0");
        out += ',' + sanitize_field(row.status);
        out += '\n';
    }
    return out;
}

std::string render_distribution(const DistributionResult& result, OutputFormat format,
                                std::uint64_t config_hash) {
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["tool"] = "mpcav";
        doc["version"] = kVersion;
        doc["subcommand"] = "dist";
        doc["config_hash"] = hex_hash(config_hash);
        doc["params"] = params_json(result.params);
        doc["order"] = result.N;
        doc["n_max"] = result.n_max;
        doc["observables"] = obs_json(result.obs);
        auto rows = ordered_json::array();
        for (int n = 0; n <= result.n_max; ++n)
            rows.push_back({{"n", n}, {"p", result.dist.p(n)}});
        doc["distribution"] = std::move(rows);
        return doc.dump(2) + "\n";
    }

    std::string out;
    append_metadata(out, "dist", config_hash);
    out += "n,p_n,order,eta,xi,nbar,kappa,gamma,n_max\n";
    const ModelParams& p = result.params;
    for (int n = 0; n <= result.n_max; ++n) {
        out += std::to_string(n);
        out += ',' + format_double(result.dist.p(n));
        out += ',' + std::to_string(result.N);
        out += ',' + format_double(p.eta);
        out += ',' + format_double(p.xi);
        out += ',' + format_double(p.nbar);
        out += ',' + format_double(p.kappa);
        out += ',' + format_double(p.gamma);
        out += ',' + std::to_string(result.n_max);
        out += '\n';
    }
    return out;
}

std::string render_validate(const ValidateResult& result, OutputFormat format,
                            std::uint64_t config_hash) {
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["tool"] = "mpcav";
        doc["version"] = kVersion;
        doc["subcommand"] = "validate";
        doc["config_hash"] = hex_hash(config_hash);
        doc["params"] = params_json(result.params);
        doc["order"] = result.N;
        doc["n_max_effective"] = result.n_max_effective;
        doc["n_max_full"] = result.n_max_full;
        doc["effective"] = obs_json(result.effective);
        doc["full"] = obs_json(result.full);
        doc["mean_gap_rel"] = result.mean_gap_rel;
        if (result.g2_gap_rel)
            doc["g2_gap_rel"] = *result.g2_gap_rel;
        else
            doc["g2_gap_rel"] = nullptr;
        doc["mean_band"] = result.mean_band;
        doc["g2_band"] = result.g2_band;
        doc["within_band"] = result.within_band;
        doc["solver_unique"] = result.solver_unique;
        doc["warnings"] = result.warnings;
        return doc.dump(2) + "\n";
    }

    std::string out;
    append_metadata(out, "validate", config_hash);
    for (const auto& warning : result.warnings) out += "# warning " + sanitize_field(warning) + "\n";
    out += "eta,xi,nbar,kappa,gamma,omega,rabi,order,n_max_effective,n_max_full,"
           "mean_full,mean_effective,mean_gap_rel,g2_full,g2_effective,g2_gap_rel,"
           "mean_band,g2_band,within_band,solver_unique\n";
    const ModelParams& p = result.params;
    out += format_double(p.eta);
    out += ',' + format_double(p.xi);
    out += ',' + format_double(p.nbar);
    out += ',' + format_double(p.kappa);
    out += ',' + format_double(p.gamma);
    out += ',' + (p.omega ? format_double(*p.omega) : "nan");
    out += ',' + (p.Omega ? format_double(*p.Omega) : "nan");
    out += ',' + std::to_string(result.N);
    out += ',' + std::to_string(result.n_max_effective);
    out += ',' + std::to_string(result.n_max_full);
    out += ',' + format_double(result.full.mean_n);
    out += ',' + format_double(result.effective.mean_n);
    out += ',' + format_double(result.mean_gap_rel);
    out += ',' + optional_double(result.full.g2);
    out += ',' + optional_double(result.effective.g2);
    out += ',' + optional_double(result.g2_gap_rel);
    out += ',' + format_double(result.mean_band);
    out += ',' + format_double(result.g2_band);
    out += std::string(",") + (result.within_band ? "1" : "0");
    out += std::string(",") + (result.solver_unique ? "1" : "0");
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace mpcav

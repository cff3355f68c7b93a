#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgal/montecarlo.hpp"
#include "pgal/rat.hpp"

namespace pgal::emit {

enum class Format { Table, Csv, Json };

inline std::optional<Format> parse_format(const std::string& s) {
    if (s == "table") return Format::Table;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return std::nullopt;
}

// One output row; every command maps onto this shape so that the CSV column
// order (label, exact_num, exact_den, estimate, stderr, z, count) is uniform.
struct OutRow {
    std::string label;
    std::optional<Rat> exact;
    std::optional<double> estimate;
    std::optional<double> stderr_;
    std::optional<double> z;
    std::optional<uint64_t> count;
    std::optional<Rat> bound;  // secondary rational (bound checks)
    std::optional<bool> pass;
    bool asserted = true;
};

struct Document {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;  // echoed configuration
    std::vector<OutRow> rows;
    std::vector<std::pair<std::string, nlohmann::ordered_json>> extras;
    std::optional<bool> all_pass;
};

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt_double_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string render_json(const Document& doc) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = doc.command;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : doc.params) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : doc.rows) {
        nlohmann::ordered_json row;
        row["label"] = r.label;
        if (r.exact) {
            row["exact_num"] = r.exact->get_num().get_str();
            row["exact_den"] = r.exact->get_den().get_str();
            row["exact_decimal"] = to_decimal(*r.exact);
        }
        if (r.estimate) row["estimate"] = *r.estimate;
        if (r.stderr_) row["stderr"] = *r.stderr_;
        if (r.z) row["z"] = *r.z;
        if (r.count) row["count"] = *r.count;
        if (r.bound) {
            row["bound_num"] = r.bound->get_num().get_str();
            row["bound_den"] = r.bound->get_den().get_str();
            row["bound_decimal"] = to_decimal(*r.bound);
        }
        row["asserted"] = r.asserted;
        if (r.pass) row["pass"] = *r.pass;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    for (const auto& [k, v] : doc.extras) j[k] = v;
    if (doc.all_pass) j["all_pass"] = *doc.all_pass;
    return j.dump(2) + "\n";
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string render_csv(const Document& doc) {
    std::string out = "label,exact_num,exact_den,estimate,stderr,z,count\n";
    for (const auto& r : doc.rows) {
        out += csv_escape(r.label);
        out += ',';
        if (r.exact) {
            out += r.exact->get_num().get_str() + ',' + r.exact->get_den().get_str();
        } else {
            out += ',';
        }
        out += ',';
        if (r.estimate) out += fmt_double(*r.estimate);
        out += ',';
        if (r.stderr_) out += fmt_double(*r.stderr_);
        out += ',';
        if (r.z) out += fmt_double(*r.z);
        out += ',';
        if (r.count) out += std::to_string(*r.count);
        out += '\n';
    }
    return out;
}

inline std::string render_table(const Document& doc) {
    std::string out = "# " + doc.command;
    for (const auto& [k, v] : doc.params) out += " " + k + "=" + v;
    out += "\n";

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"label", "exact", "decimal", "estimate", "stderr", "z", "count", "status"});
    for (const auto& r : doc.rows) {
        std::vector<std::string> c(8);
        c[0] = r.label;
        if (r.exact) {
            c[1] = r.exact->get_num().get_str() + "/" + r.exact->get_den().get_str();
            c[2] = to_decimal(*r.exact, 12);
        }
        if (r.estimate) c[3] = fmt_double_short(*r.estimate);
        if (r.stderr_) c[4] = fmt_double_short(*r.stderr_);
        if (r.z) c[5] = fmt_double_short(*r.z);
        if (r.count) c[6] = std::to_string(*r.count);
        if (r.pass) c[7] = (*r.pass ? "pass" : "FAIL") + std::string(r.asserted ? "" : " (report-only)");
        if (r.bound) c[1] += "  bound " + r.bound->get_num().get_str() + "/" + r.bound->get_den().get_str();
        cells.push_back(std::move(c));
    }
    std::vector<bool> used(8, false);
    for (size_t r = 1; r < cells.size(); ++r)
        for (size_t i = 0; i < 8; ++i) used[i] = used[i] || !cells[r][i].empty();
    std::vector<size_t> width(8, 0);
    for (const auto& row : cells)
        for (size_t i = 0; i < 8; ++i)
            if (used[i]) width[i] = std::max(width[i], row[i].size());
    for (const auto& row : cells) {
        std::string line;
        for (size_t i = 0; i < 8; ++i) {
            if (!used[i]) continue;
            line += row[i];
            line.append(width[i] - row[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    for (const auto& [k, v] : doc.extras) out += k + ": " + v.dump() + "\n";
    if (doc.all_pass) out += std::string("overall: ") + (*doc.all_pass ? "pass" : "FAIL") + "\n";
    return out;
}

inline std::string render(const Document& doc, Format f) {
    switch (f) {
        case Format::Json: return render_json(doc);
        case Format::Csv: return render_csv(doc);
        case Format::Table: return render_table(doc);
    }
    return {};
}

// Experiment reports carry their sampling configuration; thread count and
// wall time stay out so that reruns are byte-identical.
inline Document report_document(const ExperimentReport& rep) {
    Document doc;
    doc.command = "sample";
    const ExperimentConfig& c = rep.config;
    doc.params = {{"p", std::to_string(c.p)},
                  {"f", std::to_string(c.f)},
                  {"e", std::to_string(c.e)},
                  {"n", std::to_string(c.n)},
                  {"samples", std::to_string(c.samples)},
                  {"seed", std::to_string(c.seed)},
                  {"precision_cap", std::to_string(c.precision_cap)},
                  {"mode", mode_name(c.mode)}};
    for (const auto& r : rep.rows) {
        OutRow o;
        o.label = r.label;
        o.exact = r.exact;
        o.estimate = r.frequency;
        o.stderr_ = r.stderr_;
        o.z = r.z;
        o.count = r.count;
        o.pass = r.pass;
        o.asserted = r.asserted;
        doc.rows.push_back(std::move(o));
    }
    doc.extras.emplace_back("undetermined", rep.undetermined);
    doc.extras.emplace_back("deferred", rep.deferred);
    if (rep.config.mode == Mode::StarConditioned)
        doc.extras.emplace_back("conditioned_total", rep.conditioned_total);
    if (!rep.case_histogram.empty()) {
        nlohmann::ordered_json h = nlohmann::ordered_json::object();
        for (const auto& [k, v] : rep.case_histogram) h[k] = v;
        doc.extras.emplace_back("case_histogram", std::move(h));
    }
    doc.all_pass = rep.all_pass;
    return doc;
}

}  // namespace pgal::emit

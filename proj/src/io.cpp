#include "cqnc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cqnc {

namespace {

// Shortest lossless representation would vary in width; a fixed %.17g is
// byte-stable and round-trips every double exactly.
std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_value(const std::string& s, const std::filesystem::path& path) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed numeric field '" + s + "' in " +
                                 path.string());
    }
}

}  // namespace

void emit_csv(const SweepResult& result, std::ostream& out) {
    out << result.axis_name;
    for (const auto& name : result.column_names) out << ',' << name;
    out << '\n';
    for (size_t i = 0; i < result.axis.size(); ++i) {
        out << format_value(result.axis[i]);
        for (const auto& col : result.columns) out << ',' << format_value(col[i]);
        out << '\n';
    }
}

void emit_json(const SweepResult& result, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["schema"] = "cqnc-sweep/1";
    doc["metadata"] = result.metadata;
    doc["axis"] = {{"name", result.axis_name}, {"values", result.axis}};
    nlohmann::ordered_json cols = nlohmann::ordered_json::object();
    for (size_t c = 0; c < result.column_names.size(); ++c)
        cols[result.column_names[c]] = result.columns[c];
    doc["columns"] = cols;
    doc["flagged_points"] = result.flagged_points;
    out << doc.dump(2) << '\n';
}

void emit(const SweepResult& result, EmitFormat format,
          const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path.string() + "'");
    if (format == EmitFormat::csv)
        emit_csv(result, out);
    else
        emit_json(result, out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed while writing '" + path.string() + "'");
}

Table to_table(const SweepResult& result) {
    Table t;
    t.axis_name = result.axis_name;
    t.axis = result.axis;
    t.column_names = result.column_names;
    t.columns = result.columns;
    return t;
}

namespace {

Table load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty CSV file '" + path.string() + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2)
        throw std::runtime_error("CSV header needs an axis and at least one column in " +
                                 path.string());
    Table t;
    t.axis_name = header.front();
    t.column_names.assign(header.begin() + 1, header.end());
    t.columns.assign(t.column_names.size(), {});
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("CSV row width mismatch in " + path.string());
        t.axis.push_back(parse_value(fields[0], path));
        for (size_t c = 0; c + 1 < fields.size(); ++c)
            t.columns[c].push_back(parse_value(fields[c + 1], path));
    }
    return t;
}

Table load_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file '" + path.string() + "'");
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("invalid JSON in '" + path.string() + "': " + e.what());
    }
    Table t;
    try {
        t.axis_name = doc.at("axis").at("name").get<std::string>();
        t.axis = doc.at("axis").at("values").get<std::vector<double>>();
        for (const auto& [name, values] : doc.at("columns").items()) {
            t.column_names.push_back(name);
            t.columns.push_back(values.get<std::vector<double>>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("unexpected JSON layout in '" + path.string() +
                                 "': " + e.what());
    }
    return t;
}

}  // namespace

Table load_table(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".csv") return load_csv(path);
    if (ext == ".json") return load_json(path);
    throw std::runtime_error("unsupported table extension '" + ext +
                             "' (expected .csv or .json): " + path.string());
}

CompareReport compare_tables(const Table& a, const Table& b, double tolerance) {
    if (!(tolerance >= 0.0))
        throw std::invalid_argument("comparison tolerance must be >= 0");
    if (a.axis_name != b.axis_name)
        throw std::invalid_argument("tables sweep different axes: '" + a.axis_name +
                                    "' vs '" + b.axis_name + "'");
    if (a.axis.size() != b.axis.size())
        throw std::invalid_argument("tables have different grid sizes");
    for (size_t i = 0; i < a.axis.size(); ++i) {
        const double diff = std::abs(a.axis[i] - b.axis[i]);
        const double scale = std::max(std::abs(a.axis[i]), std::abs(b.axis[i]));
        if (diff > 1e-12 * std::max(scale, 1e-300))
            throw std::invalid_argument("tables have different grids (axis differs)");
    }

    CompareReport report;
    report.tolerance = tolerance;
    bool all_pass = true;
    for (size_t ca = 0; ca < a.column_names.size(); ++ca) {
        const std::string& name = a.column_names[ca];
        const std::vector<double>* other = nullptr;
        for (size_t cb = 0; cb < b.column_names.size(); ++cb)
            if (b.column_names[cb] == name) {
                other = &b.columns[cb];
                break;
            }
        if (!other) {
            report.only_in_a.push_back(name);
            all_pass = false;
            continue;
        }
        ColumnDeviation dev;
        dev.name = name;
        double sum = 0.0;
        for (size_t i = 0; i < a.axis.size(); ++i) {
            const double va = a.columns[ca][i];
            const double vb = (*other)[i];
            const double denom = std::max(std::abs(va), std::abs(vb));
            const double rel = denom > 0.0 ? std::abs(va - vb) / denom : 0.0;
            dev.max_rel = std::max(dev.max_rel, rel);
            sum += rel;
        }
        dev.mean_rel = a.axis.empty() ? 0.0 : sum / static_cast<double>(a.axis.size());
        dev.pass = dev.max_rel <= tolerance;
        all_pass = all_pass && dev.pass;
        report.columns.push_back(dev);
    }
    for (const auto& name : b.column_names) {
        bool found = false;
        for (const auto& an : a.column_names)
            if (an == name) {
                found = true;
                break;
            }
        if (!found) {
            report.only_in_b.push_back(name);
            all_pass = false;
        }
    }
    report.pass = all_pass;
    return report;
}

}  // namespace cqnc

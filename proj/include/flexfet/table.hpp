#pragma once

// Column tables and their CSV form: 17 significant digits, '.' separator, LF line endings.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace flexfet {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Table {
    std::string name;                 // file stem
    std::vector<std::string> columns; // first column is the swept variable
    std::vector<std::vector<double>> rows;
    std::vector<std::string> plotted; // columns drawn in plots; empty means all
};

inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_number(row[i]);
        }
        out += '\n';
    }
    return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw OutputError("cannot write " + path.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw OutputError("write failed for " + path.string());
}

/// Create `dir` if needed and confirm a file can be written inside it.
inline void prepare_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw OutputError("cannot create output directory " + dir.string());
    const auto probe = dir / ".flexfet_write_probe";
    {
        std::ofstream f(probe, std::ios::binary);
        if (!f) throw OutputError("output directory is not writable: " + dir.string());
    }
    std::filesystem::remove(probe, ec);
}

/// Minimal CSV reader for tables written by to_csv.
inline Table read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw OutputError("cannot read " + path.string());
    Table t;
    t.name = path.stem().string();
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out(1);
        for (char c : s) {
            if (c == ',')
                out.emplace_back();
            else
                out.back() += c;
        }
        return out;
    };
    if (std::getline(f, line)) t.columns = split(line);
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const auto& cell : split(line)) row.push_back(std::strtod(cell.c_str(), nullptr));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline std::vector<double> column(const Table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] != name) continue;
        std::vector<double> out;
        for (const auto& r : t.rows) out.push_back(r[i]);
        return out;
    }
    throw std::out_of_range("no column '" + name + "' in " + t.name);
}

} // namespace flexfet

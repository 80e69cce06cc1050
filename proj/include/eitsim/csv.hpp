#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eitsim/errors.hpp"

namespace eitsim {

// Floats are serialized with 9 significant digits in the C locale so that a
// rerun of the same scenario is byte-identical.
inline std::string format_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw InvalidData("CSV column not found: " + name);
    }

    std::vector<double> numeric_column(std::size_t idx) const {
        std::vector<double> out;
        out.reserve(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (idx >= rows[r].size())
                throw InvalidData("CSV row " + std::to_string(r + 2) + " is too short");
            const std::string& cell = rows[r][idx];
            std::size_t pos = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw InvalidData("CSV row " + std::to_string(r + 2) + ": not a number: '" +
                                  cell + "'");
            }
            if (pos != cell.size())
                throw InvalidData("CSV row " + std::to_string(r + 2) + ": trailing junk in '" +
                                  cell + "'");
            out.push_back(v);
        }
        return out;
    }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidData("cannot open CSV file: " + path);
    CsvTable table;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (first) {
            table.header = cells;
            first = false;
            continue;
        }
        if (cells.size() != table.header.size())
            throw InvalidData(path + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(table.header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        table.rows.push_back(std::move(cells));
    }
    if (first) throw InvalidData(path + ": empty CSV file");
    return table;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) body_ += ',';
            body_ += header[i];
        }
        body_ += '\n';
        columns_ = header.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw InvalidInput("CsvWriter: row width does not match header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
        ++rows_;
    }

    const std::string& str() const { return body_; }
    std::size_t rows() const { return rows_; }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InvalidData("cannot open output file: " + path);
        out << body_;
        if (!out) throw InvalidData("failed writing output file: " + path);
    }

private:
    std::string body_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

} // namespace eitsim

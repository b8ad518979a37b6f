#include "excidyn/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace excidyn::harness {

void append_row(CsvTable& table, std::vector<double> row) {
    table.rows.push_back(std::move(row));
}

std::string to_csv_string(const CsvTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    char buf[40];
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size()) {
            throw std::invalid_argument("CsvTable: row " + std::to_string(r) +
                                        " does not match the header width");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!std::isfinite(row[i])) {
                throw std::invalid_argument("CsvTable: non-finite value at row " +
                                            std::to_string(r) + ", column " + table.header[i]);
            }
            if (i) out += ',';
            std::snprintf(buf, sizeof(buf), "%.12g", row[i] == 0.0 ? 0.0 : row[i]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void emit_csv(const CsvTable& table, const std::string& path) {
    write_text_file(path, to_csv_string(table));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace excidyn::harness

#pragma once

#include <string>
#include <vector>

namespace excidyn::harness {

// Rectangular numeric table with a stable header. Values are emitted with 12
// significant digits, '.' decimal separator, newline-terminated rows, so a
// given table always serializes to identical bytes.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

void append_row(CsvTable& table, std::vector<double> row);

// Throws on ragged rows or non-finite values.
std::string to_csv_string(const CsvTable& table);

void emit_csv(const CsvTable& table, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace excidyn::harness

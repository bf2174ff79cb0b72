#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace atmscore {

// Minimal RFC-4180 style CSV support: comma delimited, double-quote quoting,
// quotes escaped by doubling, embedded newlines allowed inside quoted fields.
// All files are UTF-8 with a mandatory header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // 0-based column lookup, -1 when absent.
    int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string csv_escape(const std::string& field);

// Fixed-point formatting, used for dataset columns so that write -> load ->
// write round-trips byte-identically.
std::string format_fixed(double value, int precision);

// Shortest-ish general formatting for derived quantities (scores, plans).
std::string format_general(double value);

double parse_double(const std::string& text, bool& ok);

}  // namespace atmscore

#pragma once

// Output tables for the command line tool: CSV with 17 significant digits and
// LF endings, or one JSON object {config, columns, rows}.

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace casimir::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Effective configuration, in the order it is reported.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double x);

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t, const ConfigEntries& config);

}  // namespace casimir::cli

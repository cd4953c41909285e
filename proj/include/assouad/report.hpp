#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace assouad::report {

using Json = nlohmann::ordered_json;

/// Serializes `value` with every floating-point number written at 17
/// significant digits. Non-finite numbers become the strings "inf", "-inf"
/// and "nan". Output is deterministic (insertion-ordered keys).
std::string dump_structured(const Json& value, int indent = 2);

/// 12 significant digits, used for table output.
std::string table_number(double v);
/// 17 significant digits.
std::string full_number(double v);

/// A plain aligned text table: header row, then one row per entry.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// Comma-separated rendering of the same data (no quoting; cells must not
/// contain commas).
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows);

}  // namespace assouad::report

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "hcspec/defect.hpp"
#include "hcspec/media.hpp"

namespace hcs {

using json = nlohmann::json;

// {"origin": ..., "segments": [{"length", "q", "r", "m", "label"}]}; exact lengths and
// origin are written as decimal strings when the decimal is terminating.
json profile_to_json(const CoefficientProfile& profile);
CoefficientProfile profile_from_json(const json& j);

// 17 significant digits, "." decimal; round-trips exactly.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> comments;  // written as "# ..." lines before the header

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
std::string to_csv(const CsvTable& table);

// Pretty-printed with sorted keys and a trailing newline.
std::string dump_json(const json& j);
void write_json(const std::filesystem::path& path, const json& j);
json read_json_file(const std::filesystem::path& path);

json report_to_json(const DefectReport& r);

}  // namespace hcs

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "wmbench/episodes/canonical_json.hpp"
#include "wmbench/harness/evaluate.hpp"

namespace wmbench {

struct EvalReport {
  std::vector<CellReport> cells;
  std::optional<RadarTable> radar;
};

Json cell_to_json(const CellReport& c);
CellReport cell_from_json(const Json& j);
Json report_to_json(const EvalReport& r);
EvalReport report_from_json(const Json& j);

/// Predictor rows by task columns of MSE; empty where a cell is missing.
std::string table_csv(const std::vector<CellReport>& cells);
/// task,predictor,ratio,normalized
std::string radar_csv(const RadarTable& radar);

std::string curve_file_name(const CellReport& c);

/// report.json, table.csv, one curve_<task>_<predictor>.csv per cell, and
/// radar.csv when a radar table is present.
void write_report(const EvalReport& report, const std::filesystem::path& dir);
EvalReport read_report(const std::filesystem::path& path);

}  // namespace wmbench

#include "wmbench/harness/report.hpp"

#include <algorithm>
#include <sstream>

#include "wmbench/core/error.hpp"
#include "wmbench/episodes/real_format.hpp"

namespace wmbench {

std::string curve_csv(const CellReport& report) {
  std::string out = "horizon,mse\n";
  for (const auto& p : horizon_curve(report)) out += std::to_string(p.horizon) + "," + format_real(p.error) + "\n";
  return out;
}

Json cell_to_json(const CellReport& c) {
  Json j = Json::object();
  j["predictor"] = c.predictor;
  j["task"] = std::string(to_string(c.task));
  j["episodes"] = c.episodes;
  j["condition_steps"] = c.condition_steps;
  j["rollout_steps"] = c.curve.size();
  j["mse"] = c.mse;
  j["curve"] = c.curve;
  return j;
}

CellReport cell_from_json(const Json& j) {
  CellReport c;
  try {
    c.predictor = require(j, "predictor").get<std::string>();
    c.task = task_from_string(require(j, "task").get<std::string>());
    c.episodes = require(j, "episodes").get<std::size_t>();
    c.condition_steps = require(j, "condition_steps").get<std::size_t>();
    c.mse = require_real(j, "mse");
    c.curve = require(j, "curve").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed report cell: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  }
  return c;
}

Json report_to_json(const EvalReport& r) {
  Json j = Json::object();
  j["format_version"] = kFormatVersion;
  Json cells = Json::array();
  for (const auto& c : r.cells) cells.push_back(cell_to_json(c));
  j["cells"] = std::move(cells);
  if (r.radar) {
    Json radar = Json::object();
    radar["reference"] = r.radar->reference;
    std::vector<std::string> tasks;
    for (TaskId t : r.radar->tasks) tasks.emplace_back(to_string(t));
    radar["tasks"] = tasks;
    radar["predictors"] = r.radar->predictors;
    radar["ratio"] = r.radar->ratio;
    radar["normalized"] = r.radar->normalized;
    j["radar"] = std::move(radar);
  }
  return j;
}

EvalReport report_from_json(const Json& j) {
  EvalReport r;
  const Json& cells = require(j, "cells");
  if (!cells.is_array()) throw FormatError("report cells must be a list");
  for (const auto& c : cells) r.cells.push_back(cell_from_json(c));
  if (j.contains("radar")) {
    const Json& radar = j["radar"];
    RadarTable t;
    try {
      t.reference = require(radar, "reference").get<std::string>();
      for (const auto& name : require(radar, "tasks")) t.tasks.push_back(task_from_string(name.get<std::string>()));
      t.predictors = require(radar, "predictors").get<std::vector<std::string>>();
      t.ratio = require(radar, "ratio").get<std::vector<std::vector<double>>>();
      t.normalized = require(radar, "normalized").get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(std::string("malformed radar table: ") + e.what());
    } catch (const InvalidArgument& e) {
      throw FormatError(e.what());
    }
    r.radar = std::move(t);
  }
  return r;
}

std::string table_csv(const std::vector<CellReport>& cells) {
  std::vector<TaskId> tasks;
  std::vector<std::string> predictors;
  for (const auto& c : cells) {
    if (std::find(tasks.begin(), tasks.end(), c.task) == tasks.end()) tasks.push_back(c.task);
    if (std::find(predictors.begin(), predictors.end(), c.predictor) == predictors.end()) {
      predictors.push_back(c.predictor);
    }
  }
  std::sort(tasks.begin(), tasks.end());
  std::string out = "predictor";
  for (TaskId t : tasks) out += "," + std::string(to_string(t));
  out += "\n";
  for (const auto& p : predictors) {
    out += p;
    for (TaskId t : tasks) {
      out += ",";
      const auto it = std::find_if(cells.begin(), cells.end(),
                                   [&](const CellReport& c) { return c.task == t && c.predictor == p; });
      if (it != cells.end()) out += format_real(it->mse);
    }
    out += "\n";
  }
  return out;
}

std::string radar_csv(const RadarTable& radar) {
  std::string out = "task,predictor,ratio,normalized\n";
  for (std::size_t t = 0; t < radar.tasks.size(); ++t) {
    for (std::size_t p = 0; p < radar.predictors.size(); ++p) {
      out += std::string(to_string(radar.tasks[t])) + "," + radar.predictors[p] + "," +
             format_real(radar.ratio[t][p]) + "," + format_real(radar.normalized[t][p]) + "\n";
    }
  }
  return out;
}

std::string curve_file_name(const CellReport& c) {
  return "curve_" + std::string(to_string(c.task)) + "_" + c.predictor + ".csv";
}

void write_report(const EvalReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "report.json", dump_canonical(report_to_json(report)));
  write_text_file(dir / "table.csv", table_csv(report.cells));
  for (const auto& c : report.cells) write_text_file(dir / curve_file_name(c), curve_csv(c));
  if (report.radar) write_text_file(dir / "radar.csv", radar_csv(*report.radar));
}

EvalReport read_report(const std::filesystem::path& path) {
  return report_from_json(parse_json(read_text_file(path), path.string()));
}

}  // namespace wmbench

#include "xf/record.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "xf/errors.hpp"

namespace xf {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::ordered_json record_body(const ResultRecord& r, bool with_times) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["version"] = r.version;
  j["config_hash"] = r.config_hash;
  j["config"] = r.config_text;
  j["timestamps"]["started"] = with_times ? r.started : "";
  j["timestamps"]["finished"] = with_times ? r.finished : "";
  j["constants"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.constants) j["constants"][k] = v;
  j["verdicts"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.verdicts) j["verdicts"][k] = v;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  j["exit_code"] = r.exit_code;
  return j;
}

} // namespace

std::string csv_points(const ResultRecord& r) {
  auto has = [&](const char* name) {
    return std::find(r.columns.begin(), r.columns.end(), name) !=
           r.columns.end();
  };
  if (!has("residual") || !has("tolerance"))
    throw ValidationError("columns",
                          "point tables must carry residual and tolerance");
  std::string out;
  for (size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    if (row.size() != r.columns.size())
      throw ValidationError("rows", "row width does not match the header");
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += fmt17(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string record_json(const ResultRecord& r) {
  return record_body(r, true).dump(2) + "\n";
}

std::string record_json_canonical(const ResultRecord& r) {
  return record_body(r, false).dump(2) + "\n";
}

std::vector<std::string> write_record(const ResultRecord& r,
                                      const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const std::string jpath = (fs::path(dir) / "record.json").string();
  const std::string cpath = (fs::path(dir) / "points.csv").string();
  {
    std::ofstream out(jpath, std::ios::binary);
    out << record_json(r);
  }
  {
    std::ofstream out(cpath, std::ios::binary);
    out << csv_points(r);
  }
  return {jpath, cpath};
}

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace xf

#pragma once

#include <map>
#include <string>
#include <vector>

namespace xf {

// Everything an experiment produced: a column-ordered table of point rows,
// named constants, named verdicts, and the provenance block (config text,
// hash, version, wall-clock timestamps). The timestamps are the only bytes
// that vary between identical runs; points.csv never contains them.
struct ResultRecord {
  std::string experiment;
  std::string config_hash;
  std::string config_text;
  std::string started;
  std::string finished;
  std::string version = "0.3.0";
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::map<std::string, double> constants;
  std::map<std::string, std::string> verdicts;
  int exit_code = 0;
};

// CSV bytes for the point table: header line, then one %.17g row per point.
// Throws ValidationError unless the columns include "residual" and
// "tolerance" (every row must carry the solver residual and the tolerance it
// was held to) and every row matches the header width.
std::string csv_points(const ResultRecord& r);

// record.json bytes: deterministic field order, config embedded verbatim.
std::string record_json(const ResultRecord& r);

// record_json with the timestamps blanked; two runs of the same config and
// seed agree byte for byte on this form.
std::string record_json_canonical(const ResultRecord& r);

// Writes record.json and points.csv under dir (created if needed); returns
// the two paths.
std::vector<std::string> write_record(const ResultRecord& r,
                                      const std::string& dir);

std::string iso_utc_now();

} // namespace xf

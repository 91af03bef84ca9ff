#include "xf/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "xf/errors.hpp"
#include "xf/scans.hpp"

namespace xf {

namespace {

const char* kExperimentNames[] = {
    "resolvent-scan", "mourre-scan",        "weighted-mourre-scan",
    "certificate",    "detector",           "propagator-validate",
    "unboundedness-demo", "diagnostics"};

struct Token {
  enum Kind { number, string, boolean, array } kind;
  double num = 0;
  std::string str;
  bool flag = false;
  std::vector<double> items;
};

bool parse_number(const std::string& s, double& out) {
  const char* p = s.c_str();
  char* end = nullptr;
  out = std::strtod(p, &end);
  return end == p + s.size() && s.size() > 0 && std::isfinite(out);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Token parse_value(const std::string& raw, int line, int col) {
  Token t;
  std::string v = trim(raw);
  if (v.empty()) throw ParseError("missing value", line, col);
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"')
      throw ParseError("unterminated string", line, col);
    t.kind = Token::string;
    t.str = v.substr(1, v.size() - 2);
    return t;
  }
  if (v.front() == '[') {
    if (v.back() != ']') throw ParseError("unterminated array", line, col);
    t.kind = Token::array;
    std::string body = v.substr(1, v.size() - 2);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ParseError("empty array element", line, col);
      double d;
      if (!parse_number(item, d))
        throw ParseError("malformed number '" + item + "'", line, col);
      t.items.push_back(d);
    }
    return t;
  }
  if (v == "true" || v == "false") {
    t.kind = Token::boolean;
    t.flag = v == "true";
    return t;
  }
  t.kind = Token::number;
  if (!parse_number(v, t.num))
    throw ParseError("malformed value '" + v + "'", line, col);
  return t;
}

double want_number(const Token& t, const std::string& field) {
  if (t.kind != Token::number)
    throw ValidationError(field, "expected a number");
  return t.num;
}

int want_int(const Token& t, const std::string& field) {
  double d = want_number(t, field);
  if (d != std::floor(d))
    throw ValidationError(field, "must be an integer");
  return int(d);
}

std::string want_string(const Token& t, const std::string& field) {
  if (t.kind != Token::string)
    throw ValidationError(field, "expected a quoted string");
  return t.str;
}

bool want_bool(const Token& t, const std::string& field) {
  if (t.kind != Token::boolean)
    throw ValidationError(field, "expected true or false");
  return t.flag;
}

std::vector<double> want_array(const Token& t, const std::string& field) {
  if (t.kind != Token::array)
    throw ValidationError(field, "expected an array");
  return t.items;
}

void validate(const ExperimentConfig& c, bool have_experiment) {
  if (!have_experiment)
    throw ValidationError("experiment", "missing required key");
  if (c.n < 8) throw ValidationError("grid.n", "must be at least 8");
  if (!(c.box_half > 0))
    throw ValidationError("grid.box_half", "must be positive");
  if (!(c.gamma > 0.0 && c.gamma < 0.5))
    throw ValidationError("weights.gamma", "gamma must be in (0, 0.5)");
  if (!(c.delta > 0 && c.delta <= 2))
    throw ValidationError("weights.delta", "must be in (0, 2]");
  if (!(c.eta0 > 0))
    throw ValidationError("weights.eta0", "must be positive");
  if (!(c.weight_a > 1))
    throw ValidationError("weights.a", "must exceed 1");
  if (c.weight_kind != "radial" && c.weight_kind != "strip" &&
      c.weight_kind != "identity")
    throw ValidationError("weights.kind",
                          "must be one of radial, strip, identity");
  if (!(c.s_decay > 0.5 && c.s_decay < 0.75))
    throw ValidationError("potential.s_decay", "must lie in (0.5, 0.75)");
  if (c.amplitude < 0)
    throw ValidationError("potential.amplitude", "must be nonnegative");
  if (!(c.strip_eta0 > 0 && c.strip_eta0 < 1))
    throw ValidationError("potential.eta0", "must lie in (0, 1)");
  if (!(c.well_depth > 0))
    throw ValidationError("potential.depth", "must be positive");
  if (!(c.well_width > 0))
    throw ValidationError("potential.width", "must be positive");
  if (c.lambda_points < 1)
    throw ValidationError("scan.lambda_points", "must be at least 1");
  if (c.nu_points < 1)
    throw ValidationError("scan.nu_points", "must be at least 1");
  if (c.lambda_max < c.lambda_min)
    throw ValidationError("scan.lambda_max", "must be >= lambda_min");
  if (c.nu_max < c.nu_min)
    throw ValidationError("scan.nu_max", "must be >= nu_min");
  if (!(c.nu_min > 0))
    throw ValidationError("scan.nu_min", "must be positive");
  if (c.spacing != "log" && c.spacing != "linear")
    throw ValidationError("scan.spacing", "must be log or linear");
  if (c.spacing == "log" && !(c.lambda_min > 0))
    throw ValidationError("scan.lambda_min",
                          "must be positive for log spacing");
  if (!(c.theta > 0 && c.theta < 1))
    throw ValidationError("scan.theta", "must be in (0, 1)");
  if (!(c.R > 0)) throw ValidationError("scan.R", "must be positive");
  if (c.t_list.empty())
    throw ValidationError("scan.t_list", "must be nonempty");
  for (double t : c.t_list)
    if (!(t > 0))
      throw ValidationError("scan.t_list", "entries must be positive");
  if (c.n_list.empty())
    throw ValidationError("scan.n_list", "must be nonempty");
  for (int m : c.n_list)
    if (m < 0 || m > 60)
      throw ValidationError("scan.n_list", "entries must lie in [0, 60]");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string experiment_name(ExperimentKind k) {
  return kExperimentNames[int(k)];
}

ExperimentKind experiment_from_name(const std::string& name) {
  for (int i = 0; i < 8; ++i)
    if (name == kExperimentNames[i]) return ExperimentKind(i);
  throw ValidationError("experiment", "unknown experiment '" + name + "'");
}

Grid2D ExperimentConfig::grid() const {
  return build_square_grid(box_half, n, backend);
}

PotentialSpec ExperimentConfig::potential_spec() const {
  switch (potential) {
    case PotentialKind::strip:
      return make_strip_potential(amplitude, s_decay, strip_eta0, strip_beta);
    case PotentialKind::well:
      return gaussian_well_potential(well_depth, well_width);
    default:
      return zero_potential();
  }
}

std::vector<double> ExperimentConfig::lambda_grid() const {
  if (spacing == "log") return log_spaced(lambda_min, lambda_max, lambda_points);
  return lin_spaced(lambda_min, lambda_max, lambda_points);
}

std::vector<double> ExperimentConfig::nu_grid() const {
  return log_spaced(nu_min, nu_max, nu_points);
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig c;
  bool have_experiment = false;
  std::set<std::string> seen;
  std::string section;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // comments start at '#' outside quotes
    std::string line;
    bool quoted = false;
    for (char ch : raw) {
      if (ch == '"') quoted = !quoted;
      if (ch == '#' && !quoted) break;
      line.push_back(ch);
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      size_t close = line.find(']');
      if (close == std::string::npos)
        throw ParseError("unterminated section header", lineno, 1);
      if (close + 1 != line.size())
        throw ParseError("trailing characters after section header", lineno,
                         int(close) + 2);
      section = trim(line.substr(1, close - 1));
      if (section != "grid" && section != "potential" &&
          section != "weights" && section != "scan")
        throw ValidationError(section, "unknown section");
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected key = value", lineno, 1);
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("missing key", lineno, 1);
    for (char ch : key)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        throw ParseError("bad character in key", lineno, 1);
    const int vcol = int(eq) + 2;
    Token tok = parse_value(line.substr(eq + 1), lineno, vcol);

    std::string full = section.empty() ? key : section + "." + key;
    if (!seen.insert(full).second)
      throw ValidationError(full, "duplicate key");

    if (full == "experiment") {
      c.experiment = experiment_from_name(want_string(tok, full));
      have_experiment = true;
    } else if (full == "seed") {
      int s = want_int(tok, full);
      if (s < 0) throw ValidationError(full, "must be nonnegative");
      c.seed = std::uint32_t(s);
    } else if (full == "output_dir") {
      c.output_dir = want_string(tok, full);
    } else if (full == "grid.box_half") {
      c.box_half = want_number(tok, full);
    } else if (full == "grid.n") {
      c.n = want_int(tok, full);
    } else if (full == "grid.backend") {
      std::string b = want_string(tok, full);
      if (b == "fd")
        c.backend = Backend::fd_dirichlet;
      else if (b == "periodic")
        c.backend = Backend::periodic_spectral;
      else
        throw ValidationError(full, "must be fd or periodic");
    } else if (full == "potential.kind") {
      std::string p = want_string(tok, full);
      if (p == "none")
        c.potential = PotentialKind::none;
      else if (p == "strip")
        c.potential = PotentialKind::strip;
      else if (p == "well")
        c.potential = PotentialKind::well;
      else
        throw ValidationError(full, "must be one of none, strip, well");
    } else if (full == "potential.amplitude") {
      c.amplitude = want_number(tok, full);
    } else if (full == "potential.s_decay") {
      c.s_decay = want_number(tok, full);
    } else if (full == "potential.eta0") {
      c.strip_eta0 = want_number(tok, full);
    } else if (full == "potential.beta") {
      c.strip_beta = want_number(tok, full);
    } else if (full == "potential.depth") {
      c.well_depth = want_number(tok, full);
    } else if (full == "potential.width") {
      c.well_width = want_number(tok, full);
    } else if (full == "potential.stark_term") {
      c.stark_term = want_bool(tok, full);
    } else if (full == "weights.kind") {
      c.weight_kind = want_string(tok, full);
    } else if (full == "weights.delta") {
      c.delta = want_number(tok, full);
    } else if (full == "weights.gamma") {
      c.gamma = want_number(tok, full);
    } else if (full == "weights.eta0") {
      c.eta0 = want_number(tok, full);
    } else if (full == "weights.beta") {
      c.beta = want_number(tok, full);
    } else if (full == "weights.a") {
      c.weight_a = want_number(tok, full);
    } else if (full == "scan.lambda_min") {
      c.lambda_min = want_number(tok, full);
    } else if (full == "scan.lambda_max") {
      c.lambda_max = want_number(tok, full);
    } else if (full == "scan.lambda_points") {
      c.lambda_points = want_int(tok, full);
    } else if (full == "scan.spacing") {
      c.spacing = want_string(tok, full);
    } else if (full == "scan.nu_min") {
      c.nu_min = want_number(tok, full);
    } else if (full == "scan.nu_max") {
      c.nu_max = want_number(tok, full);
    } else if (full == "scan.nu_points") {
      c.nu_points = want_int(tok, full);
    } else if (full == "scan.theta") {
      c.theta = want_number(tok, full);
    } else if (full == "scan.R") {
      c.R = want_number(tok, full);
    } else if (full == "scan.c_rg") {
      c.c_rg = want_number(tok, full);
    } else if (full == "scan.b_rg") {
      c.b_rg = want_number(tok, full);
    } else if (full == "scan.shift") {
      c.shift = want_number(tok, full);
    } else if (full == "scan.t_list") {
      c.t_list = want_array(tok, full);
    } else if (full == "scan.n_list") {
      c.n_list.clear();
      for (double d : want_array(tok, full)) {
        if (d != std::floor(d))
          throw ValidationError(full, "entries must be integers");
        c.n_list.push_back(int(d));
      }
    } else {
      throw ValidationError(full, "unknown key");
    }
  }

  validate(c, have_experiment);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "experiment = \"" << experiment_name(c.experiment) << "\"\n";
  out << "output_dir = \"" << c.output_dir << "\"\n";
  out << "seed = " << c.seed << "\n\n";
  out << "[grid]\n";
  out << "backend = \""
      << (c.backend == Backend::fd_dirichlet ? "fd" : "periodic") << "\"\n";
  out << "box_half = " << fmt(c.box_half) << "\n";
  out << "n = " << c.n << "\n\n";
  out << "[potential]\n";
  out << "amplitude = " << fmt(c.amplitude) << "\n";
  out << "beta = " << fmt(c.strip_beta) << "\n";
  out << "depth = " << fmt(c.well_depth) << "\n";
  out << "eta0 = " << fmt(c.strip_eta0) << "\n";
  const char* pk = c.potential == PotentialKind::none
                       ? "none"
                       : c.potential == PotentialKind::strip ? "strip" : "well";
  out << "kind = \"" << pk << "\"\n";
  out << "s_decay = " << fmt(c.s_decay) << "\n";
  out << "stark_term = " << (c.stark_term ? "true" : "false") << "\n";
  out << "width = " << fmt(c.well_width) << "\n\n";
  out << "[weights]\n";
  out << "a = " << fmt(c.weight_a) << "\n";
  out << "beta = " << fmt(c.beta) << "\n";
  out << "delta = " << fmt(c.delta) << "\n";
  out << "eta0 = " << fmt(c.eta0) << "\n";
  out << "gamma = " << fmt(c.gamma) << "\n";
  out << "kind = \"" << c.weight_kind << "\"\n\n";
  out << "[scan]\n";
  out << "R = " << fmt(c.R) << "\n";
  out << "b_rg = " << fmt(c.b_rg) << "\n";
  out << "c_rg = " << fmt(c.c_rg) << "\n";
  out << "lambda_max = " << fmt(c.lambda_max) << "\n";
  out << "lambda_min = " << fmt(c.lambda_min) << "\n";
  out << "lambda_points = " << c.lambda_points << "\n";
  out << "n_list = [";
  for (size_t i = 0; i < c.n_list.size(); ++i)
    out << (i ? ", " : "") << c.n_list[i];
  out << "]\n";
  out << "nu_max = " << fmt(c.nu_max) << "\n";
  out << "nu_min = " << fmt(c.nu_min) << "\n";
  out << "nu_points = " << c.nu_points << "\n";
  out << "shift = " << fmt(c.shift) << "\n";
  out << "spacing = \"" << c.spacing << "\"\n";
  out << "t_list = [";
  for (size_t i = 0; i < c.t_list.size(); ++i)
    out << (i ? ", " : "") << fmt(c.t_list[i]);
  out << "]\n";
  out << "theta = " << fmt(c.theta) << "\n";
  return out.str();
}

std::string config_hash(const ExperimentConfig& c) {
  const std::string s = serialize_config(c);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

} // namespace xf

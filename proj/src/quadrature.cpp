#include "fm/quadrature.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fm {

std::string to_string(TailMode m) {
  switch (m) {
    case TailMode::zero: return "zero";
    case TailMode::geometric: return "geometric";
    default: return "power_fit";
  }
}

TailMode tail_mode_from_string(const std::string& s) {
  if (s == "zero") return TailMode::zero;
  if (s == "geometric") return TailMode::geometric;
  if (s == "power_fit") return TailMode::power_fit;
  throw std::invalid_argument("unknown tail_estimate_mode: " + s);
}

QuadratureConfig QuadratureConfig::outer() const {
  QuadratureConfig c = *this;
  c.abs_tol = abs_tol * 1e2;
  c.rel_tol = rel_tol * 1e2;
  return c;
}

QuadratureConfig QuadratureConfig::refined(double factor) const {
  QuadratureConfig c = *this;
  c.abs_tol = abs_tol / factor;
  c.rel_tol = rel_tol / factor;
  c.max_subdivisions = static_cast<int>(max_subdivisions * factor);
  return c;
}

void QuadratureConfig::validate() const {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (!(truncation_radius > 0.0))
    throw std::invalid_argument("truncation_radius must be positive");
  if (!(singularity_exclusion > 0.0))
    throw std::invalid_argument("singularity_exclusion must be positive");
  if (max_subdivisions < 1)
    throw std::invalid_argument("max_subdivisions must be >= 1");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

QuadratureConfig parse_config_text(const std::string& text) {
  QuadratureConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "abs_tol") cfg.abs_tol = std::stod(val);
      else if (key == "rel_tol") cfg.rel_tol = std::stod(val);
      else if (key == "truncation_radius") cfg.truncation_radius = std::stod(val);
      else if (key == "singularity_exclusion") cfg.singularity_exclusion = std::stod(val);
      else if (key == "max_subdivisions") cfg.max_subdivisions = std::stoi(val);
      else if (key == "tail_estimate_mode") cfg.tail_mode = tail_mode_from_string(val);
      else throw std::invalid_argument("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for " + key);
    }
  }
  cfg.validate();
  return cfg;
}

QuadratureConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace detail {

std::vector<double> ladder_edges(double a, double b) {
  std::vector<double> edges{a};
  double step = std::max(1.0, std::fabs(a) * 0.5);
  double t = a;
  while (t + step < b) {
    t += step;
    edges.push_back(t);
    step *= 2.0;
  }
  edges.push_back(b);
  return edges;
}

std::vector<double> ladder_edges_reversed(double a, double b) {
  std::vector<double> edges{b};
  double step = std::max(1.0, std::fabs(b) * 0.5);
  double t = b;
  while (t - step > a) {
    t -= step;
    edges.push_back(t);
    step *= 2.0;
  }
  edges.push_back(a);
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace detail

}  // namespace fm

// Run configuration: JSON in, validated RunConfig out.  Every error carries
// the source line it refers to.
#pragma once

#include "reltoa/arrival.hpp"
#include "reltoa/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace reltoa {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)), line_(line) {}
  int line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  int line_;
};

struct GridConfig {
  double p_min = 1e-3;
  double p_max = 10.0;
  int n_points = 512;
  int deriv_order = 4;
  int panels = 8;
};

struct TimeConfig {
  double t_min = -40.0;
  double t_max = 60.0;
  int n_t = 1001;
};

struct EigenConfig {
  std::string family = "t";  // "t", "x" or "xb"
  std::vector<double> labels{0.0, 2.0};
  int sign = 1;  // lambda, or b for "xb"
  double s = 0.5;
};

struct LimitsConfig {
  double ratio_max = 1e-1;
  double ratio_min = 1e-4;
  int per_decade = 4;
  double eigfun_t = 1.0;
  std::vector<double> e_max_factors{10.0, 20.0, 40.0};
};

struct RunConfig {
  double mass = 1.0;
  GridConfig grid;
  PacketSpec packet;
  bool has_packet = false;
  TimeConfig time;
  bool has_time = false;
  EigenConfig eigen;
  LimitsConfig limits;
  std::int64_t seed = 12345;

  GridPtr make_grid() const {
    return build_grid(grid.p_min, grid.p_max, grid.n_points, grid.deriv_order, grid.panels);
  }
  nlohmann::ordered_json to_json() const;
};

namespace detail {

inline int line_at_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

/// Line of the last key in `path`, found by scanning for each quoted key in
/// turn; falls back to the last key located.
inline int line_of(const std::string& text, const std::vector<std::string>& path) {
  std::size_t pos = 0, found = std::string::npos;
  for (const auto& key : path) {
    const std::string quoted = "\"" + key + "\"";
    std::size_t at = pos;
    while ((at = text.find(quoted, at)) != std::string::npos) {
      std::size_t after = at + quoted.size();
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after < text.size() && text[after] == ':') break;
      at += quoted.size();
    }
    if (at == std::string::npos) break;
    found = at;
    pos = at + quoted.size();
  }
  return found == std::string::npos ? 1 : line_at_offset(text, found);
}

class Reader {
 public:
  Reader(const std::string& text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what) const {
    std::string dotted;
    for (const auto& k : path) dotted += (dotted.empty() ? "" : ".") + k;
    throw ConfigError(source_, line_of(text_, path), dotted.empty() ? what : dotted + ": " + what);
  }

  void only_keys(const nlohmann::json& obj, const std::vector<std::string>& path,
                 const std::vector<std::string>& allowed) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        auto p = path;
        p.push_back(k);
        fail(p, "unknown key");
      }
    }
  }

  double number(const nlohmann::json& obj, std::vector<std::string> path, const std::string& key,
                std::optional<double> fallback = std::nullopt) const {
    path.push_back(key);
    if (!obj.contains(key)) {
      if (fallback) return *fallback;
      path.pop_back();
      fail(path, "missing required key '" + key + "'");
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  std::int64_t integer(const nlohmann::json& obj, std::vector<std::string> path, const std::string& key,
                       std::optional<std::int64_t> fallback = std::nullopt) const {
    path.push_back(key);
    if (!obj.contains(key)) {
      if (fallback) return *fallback;
      path.pop_back();
      fail(path, "missing required key '" + key + "'");
    }
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
  }

  Complex complex(const nlohmann::json& obj, std::vector<std::string> path, const std::string& key,
                  Complex fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (v.is_number()) return v.get<double>();
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(path, "expected a number or a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
  }

  std::vector<double> numbers(const nlohmann::json& obj, std::vector<std::string> path,
                              const std::string& key, const std::vector<double>& fallback) const {
    path.push_back(key);
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(path, "expected a non-empty array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

 private:
  const std::string& text_;
  std::string source_;
};

}  // namespace detail

inline RunConfig parse_config(const std::string& text, const std::string& source = "<config>") {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, detail::line_at_offset(text, e.byte > 0 ? e.byte - 1 : 0),
                      std::string("malformed JSON: ") + e.what());
  }
  const detail::Reader rd(text, source);
  rd.only_keys(doc, {}, {"mass", "grid", "packet", "time", "seed", "eigen", "limits"});

  RunConfig c;
  c.mass = rd.number(doc, {}, "mass");
  if (!(c.mass >= 0.0)) rd.fail({"mass"}, "must be >= 0");

  if (!doc.contains("grid")) rd.fail({}, "missing required section 'grid'");
  const auto& g = doc["grid"];
  rd.only_keys(g, {"grid"}, {"p_min", "p_max", "n_points", "deriv_order", "panels"});
  c.grid.p_min = rd.number(g, {"grid"}, "p_min");
  c.grid.p_max = rd.number(g, {"grid"}, "p_max");
  const auto n_points = rd.integer(g, {"grid"}, "n_points");
  const auto order = rd.integer(g, {"grid"}, "deriv_order", 4);
  const auto panels = rd.integer(g, {"grid"}, "panels", 8);
  if (!(c.grid.p_min > 0.0)) rd.fail({"grid", "p_min"}, "must be > 0 (p = 0 is excluded)");
  if (!(c.grid.p_max > c.grid.p_min)) rd.fail({"grid", "p_max"}, "must exceed p_min");
  if (n_points < 8 || n_points > 1 << 20) rd.fail({"grid", "n_points"}, "must be in [8, 2^20]");
  if (order != 2 && order != 4) rd.fail({"grid", "deriv_order"}, "must be 2 or 4");
  if (panels < 1 || panels > 1024) rd.fail({"grid", "panels"}, "must be in [1, 1024]");
  c.grid.n_points = static_cast<int>(n_points);
  c.grid.deriv_order = static_cast<int>(order);
  c.grid.panels = static_cast<int>(panels);

  if (doc.contains("packet")) {
    const auto& p = doc["packet"];
    const std::vector<std::string> at{"packet"};
    rd.only_keys(p, at, {"x0", "p0", "sigma_p", "c_plus", "c_minus", "s"});
    c.has_packet = true;
    c.packet.m = c.mass;
    c.packet.x0 = rd.number(p, at, "x0");
    c.packet.p0 = rd.number(p, at, "p0");
    c.packet.sigma_p = rd.number(p, at, "sigma_p");
    c.packet.c_plus = rd.complex(p, at, "c_plus", 1.0);
    c.packet.c_minus = rd.complex(p, at, "c_minus", 0.0);
    const double s = rd.number(p, at, "s", 0.5);
    if (s != 0.5 && s != -0.5) rd.fail({"packet", "s"}, "must be 0.5 or -0.5");
    c.packet.s = spin_from_value(s);
    if (!(c.packet.sigma_p > 0.0)) rd.fail({"packet", "sigma_p"}, "must be > 0");
    const double w = std::norm(c.packet.c_plus) + std::norm(c.packet.c_minus);
    if (std::abs(w - 1.0) > 1e-9)
      rd.fail({"packet", p.contains("c_minus") ? "c_minus" : "c_plus"},
              "|c_plus|^2 + |c_minus|^2 must equal 1, got " + std::to_string(w));
    if (std::abs(c.packet.p0) + 6.0 * c.packet.sigma_p > c.grid.p_max)
      rd.fail({"packet", "p0"}, "grid p_max does not cover |p0| + 6 sigma_p");
  }

  if (doc.contains("time")) {
    const auto& t = doc["time"];
    rd.only_keys(t, {"time"}, {"t_min", "t_max", "n_t"});
    c.has_time = true;
    c.time.t_min = rd.number(t, {"time"}, "t_min");
    c.time.t_max = rd.number(t, {"time"}, "t_max");
    const auto n_t = rd.integer(t, {"time"}, "n_t");
    if (!(c.time.t_max > c.time.t_min)) rd.fail({"time", "t_max"}, "must exceed t_min");
    if (n_t < 2 || n_t > 10'000'000) rd.fail({"time", "n_t"}, "must be in [2, 1e7]");
    c.time.n_t = static_cast<int>(n_t);
  }

  c.seed = rd.integer(doc, {}, "seed", c.seed);

  if (doc.contains("eigen")) {
    const auto& e = doc["eigen"];
    rd.only_keys(e, {"eigen"}, {"family", "labels", "sign", "s"});
    if (e.contains("family")) {
      if (!e["family"].is_string()) rd.fail({"eigen", "family"}, "expected \"t\", \"x\" or \"xb\"");
      c.eigen.family = e["family"].get<std::string>();
      if (c.eigen.family != "t" && c.eigen.family != "x" && c.eigen.family != "xb")
        rd.fail({"eigen", "family"}, "expected \"t\", \"x\" or \"xb\"");
    }
    c.eigen.labels = rd.numbers(e, {"eigen"}, "labels", c.eigen.labels);
    const auto sign = rd.integer(e, {"eigen"}, "sign", 1);
    if (sign != 1 && sign != -1) rd.fail({"eigen", "sign"}, "must be 1 or -1");
    c.eigen.sign = static_cast<int>(sign);
    c.eigen.s = rd.number(e, {"eigen"}, "s", 0.5);
    if (c.eigen.s != 0.5 && c.eigen.s != -0.5) rd.fail({"eigen", "s"}, "must be 0.5 or -0.5");
    if (c.eigen.family == "xb" && c.mass > 0.0)
      for (double x : c.eigen.labels)
        if (x == 0.0) rd.fail({"eigen", "labels"}, "event-labelled family needs x != 0");
  }

  if (doc.contains("limits")) {
    const auto& l = doc["limits"];
    const std::vector<std::string> at{"limits"};
    rd.only_keys(l, at, {"ratio_max", "ratio_min", "per_decade", "eigfun_t", "e_max_factors"});
    c.limits.ratio_max = rd.number(l, at, "ratio_max", c.limits.ratio_max);
    c.limits.ratio_min = rd.number(l, at, "ratio_min", c.limits.ratio_min);
    const auto pd = rd.integer(l, at, "per_decade", c.limits.per_decade);
    c.limits.eigfun_t = rd.number(l, at, "eigfun_t", c.limits.eigfun_t);
    c.limits.e_max_factors = rd.numbers(l, at, "e_max_factors", c.limits.e_max_factors);
    if (!(c.limits.ratio_min > 0.0)) rd.fail({"limits", "ratio_min"}, "must be > 0");
    if (!(c.limits.ratio_max > c.limits.ratio_min)) rd.fail({"limits", "ratio_max"}, "must exceed ratio_min");
    if (pd < 1 || pd > 100) rd.fail({"limits", "per_decade"}, "must be in [1, 100]");
    c.limits.per_decade = static_cast<int>(pd);
    for (double f : c.limits.e_max_factors)
      if (!(f > 1.0)) rd.fail({"limits", "e_max_factors"}, "factors must exceed 1");
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

inline nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["mass"] = mass;
  j["grid"] = {{"p_min", grid.p_min},
               {"p_max", grid.p_max},
               {"n_points", grid.n_points},
               {"deriv_order", grid.deriv_order},
               {"panels", grid.panels}};
  if (has_packet)
    j["packet"] = {{"x0", packet.x0},
                   {"p0", packet.p0},
                   {"sigma_p", packet.sigma_p},
                   {"c_plus", {packet.c_plus.real(), packet.c_plus.imag()}},
                   {"c_minus", {packet.c_minus.real(), packet.c_minus.imag()}},
                   {"s", value_of(packet.s)}};
  if (has_time) j["time"] = {{"t_min", time.t_min}, {"t_max", time.t_max}, {"n_t", time.n_t}};
  j["seed"] = seed;
  j["eigen"] = {{"family", eigen.family}, {"labels", eigen.labels}, {"sign", eigen.sign}, {"s", eigen.s}};
  j["limits"] = {{"ratio_max", limits.ratio_max},
                 {"ratio_min", limits.ratio_min},
                 {"per_decade", limits.per_decade},
                 {"eigfun_t", limits.eigfun_t},
                 {"e_max_factors", limits.e_max_factors}};
  return j;
}

}  // namespace reltoa

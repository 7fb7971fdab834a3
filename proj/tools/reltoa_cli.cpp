// reltoa: command-line driver. Exit codes: 0 ok, 1 check failure, 2 invalid config / arguments.
#include <reltoa/config.hpp>
#include <reltoa/report.hpp>
#include <reltoa/verify.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace reltoa;
using nlohmann::ordered_json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInvalid = 2;

struct Options {
  std::string config;
  std::string out = ".";
  int parallel = 1;
  std::optional<std::int64_t> seed;
};

// Raised for inputs that parse but cannot be run; mapped to exit code 2.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load(const Options& o) {
  RunConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  return cfg;
}

fs::path out_dir(const Options& o) {
  fs::path d(o.out);
  fs::create_directories(d);
  return d;
}

int cmd_verify(const Options& o) {
  const RunConfig cfg = load(o);
  const auto checks = run_checks(cfg, static_cast<unsigned>(o.parallel));
  bool all = true;
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    std::printf("%-42s max_residual=%s tolerance=%s %s\n", c.name.c_str(), format_double(c.max_residual).c_str(),
                format_double(c.tolerance).c_str(), c.pass ? "PASS" : "FAIL");
    arr.push_back({{"name", c.name}, {"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"pass", c.pass}});
  }
  ordered_json j;
  j["checks"] = arr;
  j["pass"] = all;
  j["config"] = cfg.to_json();
  write_json(out_dir(o) / "verify.json", j);
  std::printf("%zu checks, %s\n", checks.size(), all ? "all passed" : "FAILURES");
  return all ? kOk : kCheckFailed;
}

int cmd_arrival(const Options& o) {
  const RunConfig cfg = load(o);
  if (!cfg.has_packet) throw ConfigError(o.config, 1, "arrival needs a 'packet' section");
  if (!cfg.has_time) throw ConfigError(o.config, 1, "arrival needs a 'time' section");
  const auto grid = cfg.make_grid();
  const auto psi = build_packet(cfg.packet, grid);
  const unsigned threads = static_cast<unsigned>(o.parallel);
  const auto d = arrival_distribution(psi, cfg.packet.m, cfg.time.t_min, cfg.time.t_max, cfg.time.n_t, threads);
  const auto j = flux_at_origin(psi, cfg.packet.m, d.t, threads);

  const fs::path dir = out_dir(o);
  write_csv(dir / "arrival.csv", {"t", "Pi_total", "Pi_pos", "Pi_neg", "Pi_interf"},
            {d.t, d.pi_total, d.pi_pos, d.pi_neg, d.pi_interf});
  ordered_json side;
  side["peak_time"] = d.peak();
  side["captured_mass"] = d.captured_mass;
  side["flux_peak_time"] = peak_time(d.t, j);
  side["flux_integral"] = trapezoid(d.t, j);
  side["warnings"] = d.warnings;
  side["config"] = cfg.to_json();
  write_json(dir / "arrival.json", side);
  for (const auto& w : d.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("peak_time=%s captured_mass=%s\n", format_double(d.peak()).c_str(),
              format_double(d.captured_mass).c_str());
  return kOk;
}

int cmd_eigen(const Options& o) {
  const RunConfig cfg = load(o);
  const auto grid = cfg.make_grid();
  const Branch sign = cfg.eigen.sign > 0 ? Branch::Positive : Branch::Negative;
  const Spin s = cfg.eigen.s > 0 ? Spin::Up : Spin::Down;
  const fs::path dir = out_dir(o);
  ordered_json files = ordered_json::array();
  for (std::size_t k = 0; k < cfg.eigen.labels.size(); ++k) {
    const double label = cfg.eigen.labels[k];
    const ToaEigenfunction ef = cfg.eigen.family == "t"   ? build_eigenfunction_t(label, sign, s, cfg.mass)
                                : cfg.eigen.family == "x" ? build_eigenfunction_x(label, sign, s, cfg.mass)
                                                          : build_eigenfunction_xb(label, sign, s, cfg.mass);
    try {
      ef.check_resolvable(*grid);
    } catch (const std::out_of_range& e) {
      throw InvalidInput(std::string("eigen.labels[") + std::to_string(k) + "]: " + e.what());
    }
    const auto f = ef.sample(grid);
    std::vector<std::vector<double>> cols(9);
    for (std::size_t i = 0; i < f.size(); ++i) {
      cols[0].push_back(f.p(i));
      for (int c = 0; c < 4; ++c) {
        cols[1 + 2 * c].push_back(f.values[i][c].real());
        cols[2 + 2 * c].push_back(f.values[i][c].imag());
      }
    }
    const std::string name = "eigen_" + std::to_string(k) + ".csv";
    write_csv(dir / name,
              {"p", "re_c1", "im_c1", "re_c2", "im_c2", "re_c3", "im_c3", "re_c4", "im_c4"}, cols);
    const double res = cfg.eigen.family == "t" ? eigen_residual(ef, grid) : pointwise_residual(ef, grid);
    files.push_back({{"file", name}, {"label", label}, {"residual", res}});
  }
  ordered_json j;
  j["family"] = cfg.eigen.family;
  j["files"] = files;
  j["config"] = cfg.to_json();
  write_json(dir / "eigen.json", j);
  std::printf("wrote %zu eigenfunction tables\n", files.size());
  return kOk;
}

int cmd_limits(const Options& o) {
  const RunConfig cfg = load(o);
  if (!(cfg.mass > 0.0)) throw InvalidInput("limits: mass must be > 0");
  const auto ratios = log_ratios(cfg.limits.ratio_max, cfg.limits.ratio_min, cfg.limits.per_decade);
  const auto sp = spinor_limit_report(ratios);
  const auto ef = eigenfunction_limit_report(ratios, cfg.limits.eigfun_t, cfg.mass);
  std::vector<double> werr;
  for (double r : ratios) werr.push_back(nr_spinor_error(r).w_error);

  const fs::path dir = out_dir(o);
  write_csv(dir / "limits_spinor.csv", {"ratio", "u_error", "w_error"}, {sp.ratios, sp.errors, werr});
  write_csv(dir / "limits_eigfun.csv", {"ratio", "eigfun_distance"}, {ef.ratios, ef.errors});

  bool ok = std::abs(sp.order - 1.0) <= 0.05 && sp.monotone() && ef.order >= 1.0;
  ordered_json defs = ordered_json::array();
  int n_plus = -1, n_minus = -1;
  bool stable = true;
  for (double f : cfg.limits.e_max_factors) {
    const auto d = deficiency_diagnostic(cfg.mass, f * cfg.mass);
    if (n_plus >= 0 && (d.n_plus != n_plus || d.n_minus != n_minus)) stable = false;
    n_plus = d.n_plus;
    n_minus = d.n_minus;
    ordered_json br = ordered_json::array();
    for (const auto* b : {&d.plus_positive, &d.plus_negative, &d.minus_positive, &d.minus_negative})
      br.push_back({{"branch", b->branch},
                    {"log_integral_at_emax", b->log_integral_at_emax},
                    {"log_integral_at_2emax", b->log_integral_at_2emax},
                    {"normalizable", b->normalizable}});
    defs.push_back({{"e_max", d.e_max}, {"n_plus", d.n_plus}, {"n_minus", d.n_minus}, {"branches", br}});
  }
  const bool equal = stable && n_plus == n_minus;
  ok = ok && equal;

  ordered_json j;
  j["spinor_slope"] = sp.order;
  j["spinor_monotone"] = sp.monotone();
  j["eigfun_slope"] = ef.order;
  j["deficiency"] = defs;
  j["pass"] = ok;
  j["config"] = cfg.to_json();
  write_json(dir / "limits.json", j);
  ordered_json dj;
  dj["n_plus"] = n_plus;
  dj["n_minus"] = n_minus;
  dj["equal"] = equal;
  write_json(dir / "deficiency.json", dj, -1);
  std::printf("spinor_slope=%s eigfun_slope=%s n_plus=%d n_minus=%d %s\n", format_double(sp.order).c_str(),
              format_double(ef.order).c_str(), n_plus, n_minus, ok ? "PASS" : "FAIL");
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic time-of-arrival toolkit"};
  app.require_subcommand(1);
  Options opt;
  int (*handler)(const Options&) = nullptr;

  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON run configuration")->required();
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_option("--parallel", opt.parallel, "worker threads")->check(CLI::Range(1, 1024));
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->callback([&handler, fn] { handler = fn; });
  };
  add("verify", "run the invariant checks", cmd_verify);
  add("arrival", "arrival-time distribution of a packet", cmd_arrival);
  add("eigen", "tabulate eigenfunctions on the grid", cmd_eigen);
  add("limits", "nonrelativistic limits and deficiency indices", cmd_limits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  try {
    return handler(opt);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kInvalid;
  } catch (const InvalidInput& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kCheckFailed;
  }
}

// SPDX-License-Identifier: Apache-2.0
#include "blr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "blr/bounds.hpp"
#include "blr/errors.hpp"
#include "blr/kernelmat.hpp"
#include "blr/reconstruct.hpp"
#include "blr/simulate.hpp"
#include "blr/sinc.hpp"

namespace blr::cli {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Concrete option values after defaults, config file, and flags are merged.
struct Resolved {
  std::vector<double> deltas{3.0 * kPi / 4.0, kPi / 2.0, kPi / 3.0};
  double delta = kPi / 2.0;
  std::optional<std::string> density;
  std::vector<int> n_list;
  std::vector<std::string> methods;
  int grid = 101;
  int precision_bits = 256;
  std::uint64_t seed = 0;
  int trials = 10000;
  std::optional<std::string> out;
  std::string format;
  bool normalize = true;
  std::optional<int> order;
  std::string fit_range = "upper";
  bool deep = false;
};

template <class T>
void merge(std::optional<T>& into, const std::optional<T>& from) {
  if (from.has_value()) into = from;
}

Options load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  json j;
  in >> j;
  Options o;
  if (j.contains("deltas")) o.deltas = j["deltas"].get<std::vector<double>>();
  if (j.contains("delta")) o.delta = j["delta"].get<double>();
  if (j.contains("density")) o.density = j["density"].dump();
  if (j.contains("n")) o.n_list = j["n"].get<std::vector<int>>();
  if (j.contains("methods")) o.methods = j["methods"].get<std::vector<std::string>>();
  if (j.contains("grid")) o.grid = j["grid"].get<int>();
  if (j.contains("precision_bits")) o.precision_bits = j["precision_bits"].get<int>();
  if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("trials")) o.trials = j["trials"].get<int>();
  if (j.contains("out")) o.out = j["out"].get<std::string>();
  if (j.contains("format")) o.format = j["format"].get<std::string>();
  if (j.contains("normalize")) o.normalize = j["normalize"].get<bool>();
  if (j.contains("order")) o.order = j["order"].get<int>();
  if (j.contains("fit_range")) o.fit_range = j["fit_range"].get<std::string>();
  if (j.contains("deep")) o.deep = j["deep"].get<bool>();
  return o;
}

Options merged_options(const Options& flags) {
  Options o;
  if (flags.config_path) o = load_config(*flags.config_path);
  merge(o.deltas, flags.deltas);
  merge(o.delta, flags.delta);
  merge(o.density, flags.density);
  merge(o.n_list, flags.n_list);
  merge(o.methods, flags.methods);
  merge(o.grid, flags.grid);
  merge(o.precision_bits, flags.precision_bits);
  merge(o.seed, flags.seed);
  merge(o.trials, flags.trials);
  merge(o.out, flags.out);
  merge(o.format, flags.format);
  merge(o.normalize, flags.normalize);
  merge(o.order, flags.order);
  merge(o.fit_range, flags.fit_range);
  merge(o.deep, flags.deep);
  return o;
}

Resolved resolve(const Options& flags, std::string default_format,
                 std::vector<int> default_n, std::vector<std::string> default_methods,
                 bool default_deep = false) {
  const Options o = merged_options(flags);
  Resolved r;
  r.deep = default_deep;
  r.format = std::move(default_format);
  r.n_list = std::move(default_n);
  r.methods = std::move(default_methods);
  if (o.deltas) r.deltas = *o.deltas;
  if (o.delta) r.delta = *o.delta;
  r.density = o.density;
  if (o.n_list) r.n_list = *o.n_list;
  if (o.methods) r.methods = *o.methods;
  if (o.grid) r.grid = *o.grid;
  if (o.precision_bits) r.precision_bits = *o.precision_bits;
  if (o.seed) r.seed = *o.seed;
  if (o.trials) r.trials = *o.trials;
  r.out = o.out;
  if (o.format) r.format = *o.format;
  if (o.normalize) r.normalize = *o.normalize;
  r.order = o.order;
  if (o.fit_range) r.fit_range = *o.fit_range;
  if (o.deep) r.deep = *o.deep;

  if (r.n_list.empty()) throw UsageError("n-list must be nonempty");
  for (std::size_t i = 1; i < r.n_list.size(); ++i)
    if (r.n_list[i] <= r.n_list[i - 1]) throw UsageError("n-list must be strictly ascending");
  if (r.grid < 3) throw UsageError("grid size must be >= 3");
  if (r.precision_bits < 53) throw UsageError("precision-bits must be >= 53");
  if (r.format != "csv" && r.format != "json")
    throw UsageError("format must be csv or json");
  if (r.fit_range != "full" && r.fit_range != "upper")
    throw UsageError("fit-range must be full or upper");
  return r;
}

SpectralDensity resolve_density(const Resolved& r) {
  SpectralDensity d = SpectralDensity::flat(r.delta, 1.0 / (2.0 * kPi));
  if (r.density) {
    std::string text = *r.density;
    if (!text.empty() && text.front() == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw UsageError("cannot open density file '" + text.substr(1) + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    d = SpectralDensity::from_json(json::parse(text));
  }
  return r.normalize ? d.normalized_unit_ball() : d;
}

std::vector<double> make_t_grid(int size) {
  if (size == 101) return default_t_grid();
  std::vector<double> g(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) g[static_cast<std::size_t>(i)] = double(i) / (size - 1);
  g.front() = 1e-6;
  g.back() = 1.0 - 1e-6;
  return g;
}

void check_methods(const std::vector<std::string>& methods) {
  if (methods.empty()) throw UsageError("method list must be nonempty");
  for (const std::string& m : methods)
    if (m != "shannon" && m != "a1" && m != "a2" && m != "optimal")
      throw UsageError("unknown method '" + m + "'");
}

WeightSpec spec_for(const std::string& method, double delta, std::optional<int> order) {
  if (method == "shannon") return WeightSpec::shannon(delta);
  if (method == "a1") return WeightSpec::a1(delta, order);
  if (method == "a2") return WeightSpec::a2(delta, order);
  throw UsageError("method '" + method + "' has no weight rule");
}

int emit(const Resolved& r, const std::string& text, std::ostream& out) {
  if (r.out) {
    std::ofstream f(*r.out);
    if (!f) throw UsageError("cannot open output file '" + *r.out + "'");
    f << text;
    return kExitOk;
  }
  out << text;
  return kExitOk;
}

std::string rows_to_output(const Resolved& r, const std::vector<json>& rows,
                           const std::string& csv_header,
                           const std::vector<std::string>& csv_cols) {
  if (r.format == "json") {
    json arr = json::array();
    for (const json& row : rows) arr.push_back(row);
    return arr.dump(2) + "\n";
  }
  std::string out = csv_header + "\n";
  for (const json& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < csv_cols.size(); ++i) {
      if (i) line += ',';
      const json& v = row.at(csv_cols[i]);
      if (v.is_number_float())
        line += fmt17(v.get<double>());
      else if (v.is_string())
        line += v.get<std::string>();
      else
        line += v.dump();
    }
    out += line + "\n";
  }
  return out;
}

ErrorReport scan_for_method(const std::string& method, const Autocorrelation& a, int n,
                            std::span<const double> grid, const Resolved& r) {
  if (method == "optimal")
    return sup_error_scan_optimal(a, n, grid, PrecisionConfig{r.precision_bits});
  // the practical rules default to the native double lane; --deep moves the
  // weights and the quadratic form to precision_bits for error levels near
  // or below double roundoff
  ScanOptions opts;
  if (r.deep) {
    opts.precision = PrecisionConfig{r.precision_bits};
    opts.xp_weights = true;
  }
  return sup_error_scan(spec_for(method, a.density().delta(), r.order), a, n, grid, opts);
}

}  // namespace

int run_condnum(const Options& flags, std::ostream& out, std::ostream& err) {
  try {
    const Resolved r = resolve(flags, "csv", {1, 3, 5, 7, 9}, {});
    std::vector<json> rows;
    for (double delta : r.deltas) {
      for (int n : r.n_list) {
        GramMatrix g = assemble_kd(delta, SampleGrid{n}, PrecisionConfig{r.precision_bits});
        const double kappa = condition_number(g, PrecisionConfig{r.precision_bits});
        rows.push_back({{"delta", delta}, {"n", n}, {"kappa", kappa}});
      }
    }
    return emit(r, rows_to_output(r, rows, "delta,n,kappa", {"delta", "n", "kappa"}), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_errors(const Options& flags, std::ostream& out, std::ostream& err) {
  try {
    const Resolved r =
        resolve(flags, "csv", {2, 4, 6, 8, 10, 12}, {"shannon", "a1", "a2", "optimal"});
    check_methods(r.methods);
    const SpectralDensity d = resolve_density(r);
    const Autocorrelation a(d);
    const std::vector<double> grid = make_t_grid(r.grid);
    std::vector<json> rows;
    for (const std::string& method : r.methods) {
      for (int n : r.n_list) {
        ErrorReport rep;
        try {
          rep = scan_for_method(method, a, n, grid, r);
        } catch (const Error& e) {
          throw Error("method " + method + " at n=" + std::to_string(n) + ": " + e.what());
        }
        rows.push_back({{"method", method},
                        {"n", n},
                        {"sup_rmse", rep.sup_rmse},
                        {"argmax_t", rep.argmax_t}});
      }
    }
    return emit(r, rows_to_output(r, rows, "method,n,sup_rmse,argmax_t",
                                  {"method", "n", "sup_rmse", "argmax_t"}),
                out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_bounds(const Options& flags, std::ostream& out, std::ostream& err) {
  try {
    const Resolved r = resolve(flags, "csv", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {});
    const SpectralDensity d = resolve_density(r);
    const Autocorrelation a(d);
    const DensityNorms norms = d.norms();
    const double floor_m = d.min_on(-d.delta(), d.delta());
    const std::vector<double> grid = make_t_grid(r.grid);
    std::vector<json> rows;
    for (int n : r.n_list) {
      BoundParams p;
      p.delta = d.delta();
      p.n = n;
      p.rho_l1 = norms.l1;
      p.rho_linf = norms.linf;
      p.a = -d.delta();
      p.b = d.delta();
      p.m = floor_m;
      for (BoundTag tag : {BoundTag::lemma22_lower, BoundTag::lemma22_upper,
                           BoundTag::thm24_upper, BoundTag::thm29_upper,
                           BoundTag::thm210_lower, BoundTag::thm34_upper}) {
        const BoundValue v = eval_bound(tag, p);
        rows.push_back({{"n", n},
                        {"tag", to_string(tag)},
                        {"value", v.value.value_or(
                                      std::numeric_limits<double>::quiet_NaN())},
                        {"valid", v.valid ? "true" : "false"}});
      }
      const ErrorReport rep =
          sup_error_scan_optimal(a, n, grid, PrecisionConfig{r.precision_bits});
      rows.push_back({{"n", n},
                      {"tag", "computed-optimal"},
                      {"value", rep.sup_rmse},
                      {"valid", "true"}});
    }
    return emit(r, rows_to_output(r, rows, "n,tag,value,valid", {"n", "tag", "value", "valid"}),
                out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_rates(const Options& flags, std::ostream& out, std::ostream& err) {
  try {
    const Resolved r = resolve(flags, "json", {4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14},
                               {"a1", "a2", "optimal"}, /*default_deep=*/true);
    check_methods(r.methods);
    if (r.format != "json") throw UsageError("rates emits json only");
    const SpectralDensity d = resolve_density(r);
    const Autocorrelation a(d);
    const std::vector<double> grid = make_t_grid(r.grid);
    const auto [exp_lo, exp_hi] = optimal_exponent_interval(d.delta());

    json doc;
    doc["delta"] = d.delta();
    doc["density"] = d.id();
    doc["precision_bits"] = r.precision_bits;
    doc["fit_range"] = r.fit_range;
    doc["n"] = r.n_list;
    doc["methods"] = json::array();
    for (const std::string& method : r.methods) {
      std::vector<std::pair<double, double>> series;
      for (int n : r.n_list) {
        const ErrorReport rep = scan_for_method(method, a, n, grid, r);
        series.emplace_back(double(n), rep.sup_rmse);
      }
      std::vector<std::pair<double, double>> fit_series = series;
      if (r.fit_range == "upper")
        fit_series.assign(series.begin() + static_cast<long>(series.size() / 2), series.end());
      const RateFit fit = rate_fit(fit_series);
      json m;
      m["method"] = method;
      m["slope"] = fit.slope;
      m["intercept"] = fit.intercept;
      m["r_squared"] = fit.r_squared;
      m["n_used"] = {fit.n_lo, fit.n_hi};
      if (method == "a1")
        m["theory_exponent"] = -thm32_exponent(d.delta());
      else if (method == "a2")
        m["theory_exponent"] = -0.5 * (kPi - d.delta());
      else
        m["theory_exponent"] = nullptr;
      m["exponent_interval"] = {exp_lo, exp_hi};
      json pts = json::array();
      for (const auto& [n, e] : series) pts.push_back({{"n", n}, {"sup_rmse", e}});
      m["series"] = pts;
      doc["methods"].push_back(m);
    }
    return emit(r, doc.dump(2) + "\n", out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int run_simulate(const Options& flags, std::ostream& out, std::ostream& err) {
  try {
    const Resolved r = resolve(flags, "json", {6}, {"shannon", "a1", "a2"});
    check_methods(r.methods);
    if (r.format != "json") throw UsageError("simulate emits json only");
    if (r.trials < 100) throw UsageError("simulate needs trials >= 100");
    const SpectralDensity d = resolve_density(r);
    const Autocorrelation a(d);

    std::ofstream dump;
    if (flags.dump_paths) {
      dump.open(*flags.dump_paths);
      if (!dump) throw UsageError("cannot open dump file '" + *flags.dump_paths + "'");
      dump << "trial,point,value\n";
    }

    // default 11-point evaluation grid including both endpoints
    const int tg = (r.grid == 101) ? 11 : r.grid;
    std::vector<double> tgrid(static_cast<std::size_t>(tg));
    for (int i = 0; i < tg; ++i) tgrid[static_cast<std::size_t>(i)] = double(i) / (tg - 1);

    json doc;
    doc["delta"] = d.delta();
    doc["density"] = d.id();
    doc["seed"] = r.seed;
    doc["trials"] = r.trials;
    doc["mode"] = "exact";
    json results = json::array();
    int passed = 0, total = 0;
    for (int n : r.n_list) {
      for (std::size_t ti = 0; ti < tgrid.size(); ++ti) {
        const double t = tgrid[ti];
        // one ensemble per (n, t); substream seed varies with the ensemble
        std::vector<double> points;
        for (int j = -n + 1; j <= n; ++j) points.push_back(j);
        int t_index;
        const int as_int = static_cast<int>(std::nearbyint(t));
        if (t == std::nearbyint(t) && as_int >= -n + 1 && as_int <= n) {
          t_index = as_int + n - 1;
        } else {
          t_index = static_cast<int>(points.size());
          points.push_back(t);
        }
        SimConfig cfg;
        cfg.seed = rng::splitmix64(r.seed ^ (0x5851f42d4c957f2dULL * (ti + 1)));
        cfg.trials = r.trials;
        const PathEnsemble ens = sample_paths(a, points, cfg);
        if (dump.is_open()) {
          for (int trial = 0; trial < ens.trials; ++trial)
            for (std::size_t pi = 0; pi < ens.points.size(); ++pi)
              dump << trial << ',' << fmt17(ens.points[pi]) << ','
                   << fmt17(ens.samples[pi][static_cast<std::size_t>(trial)]) << '\n';
        }
        for (const std::string& method : r.methods) {
          const CoefficientVector c = coefficients(spec_for(method, d.delta(), r.order), n, t);
          const double det = mse(a, c);
          const EmpiricalMse emp = empirical_mse(ens, c, t_index);
          double z = 0;
          if (emp.stderr_ > 0)
            z = (emp.mean - det) / emp.stderr_;
          else if (std::fabs(emp.mean - det) > 1e-14 * std::max(1.0, a.r0()))
            z = std::numeric_limits<double>::infinity();
          const bool pass = std::fabs(z) <= 3.0;
          passed += pass;
          ++total;
          results.push_back({{"method", method},
                             {"n", n},
                             {"t", t},
                             {"mse", det},
                             {"empirical", emp.mean},
                             {"stderr", emp.stderr_},
                             {"z", z},
                             {"pass", pass}});
        }
      }
    }
    doc["results"] = results;
    doc["passed"] = passed;
    doc["total"] = total;
    doc["all_pass"] = passed == total;
    return emit(r, doc.dump(2) + "\n", out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int main_impl(int argc, const char* const* argv) {
  CLI::App app{"bandlimited process reconstruction experiments"};
  app.require_subcommand(1);

  Options o;
  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--delta", o.delta, "bandwidth delta in (0, pi]");
    cmd->add_option("--density", o.density, "density JSON (inline or @file)");
    cmd->add_option("--n", o.n_list, "grid half-sizes (ascending)")->delimiter(',');
    cmd->add_option("--grid", o.grid, "t-grid size");
    cmd->add_option("--precision-bits", o.precision_bits, "significand bits for solves");
    cmd->add_option("--seed", o.seed, "RNG seed");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--format", o.format, "csv or json");
    cmd->add_option("--normalize", o.normalize, "rescale density to the unit ball");
    cmd->add_option("--order", o.order, "explicit a1/a2 order override");
    cmd->add_option("--fit-range", o.fit_range, "rate fit range: full or upper");
    cmd->add_option("--deep", o.deep, "extended-precision weights for a1/a2 scans");
    cmd->add_option("--dump-paths", o.dump_paths, "write the simulated ensemble as CSV");
    cmd->add_option("--config", o.config_path, "JSON config file (flags override)");
  };

  CLI::App* condnum = app.add_subcommand("condnum", "kernel Gram condition numbers");
  condnum->add_option("--deltas", o.deltas, "bandwidths to sweep")->delimiter(',');
  add_common(condnum);
  CLI::App* errors = app.add_subcommand("errors", "sup reconstruction error per method and n");
  errors->add_option("--methods", o.methods, "shannon,a1,a2,optimal")->delimiter(',');
  add_common(errors);
  CLI::App* bounds = app.add_subcommand("bounds", "bound envelopes and computed errors");
  add_common(bounds);
  CLI::App* rates = app.add_subcommand("rates", "fitted decay exponents");
  rates->add_option("--methods", o.methods, "shannon,a1,a2,optimal")->delimiter(',');
  add_common(rates);
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo validation of the MSE formula");
  simulate->add_option("--methods", o.methods, "shannon,a1,a2")->delimiter(',');
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (condnum->parsed()) return run_condnum(o, std::cout, std::cerr);
  if (errors->parsed()) return run_errors(o, std::cout, std::cerr);
  if (bounds->parsed()) return run_bounds(o, std::cout, std::cerr);
  if (rates->parsed()) return run_rates(o, std::cout, std::cerr);
  if (simulate->parsed()) return run_simulate(o, std::cout, std::cerr);
  return kExitUsage;
}

}  // namespace blr::cli

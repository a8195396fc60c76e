// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace blr::cli {

// Option values as parsed; unset fields fall back to config-file values and
// then to built-in defaults (flags > config > defaults).
struct Options {
  std::optional<std::vector<double>> deltas;  // condnum sweeps
  std::optional<double> delta;
  std::optional<std::string> density;  // inline JSON or @path
  std::optional<std::vector<int>> n_list;
  std::optional<std::vector<std::string>> methods;
  std::optional<int> grid;
  std::optional<int> precision_bits;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
  std::optional<std::string> format;  // csv | json
  std::optional<bool> normalize;
  std::optional<int> order;           // explicit a1/a2 order override
  std::optional<std::string> fit_range;  // full | upper
  std::optional<bool> deep;           // extended-precision a1/a2 scans
  std::optional<std::string> dump_paths;  // simulate: ensemble CSV dump path
  std::optional<std::string> config_path;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

int run_condnum(const Options& o, std::ostream& out, std::ostream& err);
int run_errors(const Options& o, std::ostream& out, std::ostream& err);
int run_bounds(const Options& o, std::ostream& out, std::ostream& err);
int run_rates(const Options& o, std::ostream& out, std::ostream& err);
int run_simulate(const Options& o, std::ostream& out, std::ostream& err);

// Full argv-level entry point used by the blrecon binary.
int main_impl(int argc, const char* const* argv);

}  // namespace blr::cli

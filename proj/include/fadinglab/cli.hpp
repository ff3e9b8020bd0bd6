#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"

namespace fadinglab::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;
inline constexpr int kParse = 2;
inline constexpr int kSpec = 3;
inline constexpr int kValidationFailed = 4;
inline constexpr int kUnsupportedSampler = 5;
}  // namespace exit_code

enum class Quantity { aep, outage, qtransform };

Quantity quantity_from_string(std::string_view name);
std::string_view to_string(Quantity q);

/// Grid points as written on the command line plus their linear values.
struct Grid {
  std::vector<double> display;
  std::vector<double> linear;
};

/// Parses "start:stop:step" (stop inclusive). With in_db each point x maps
/// to 10^(x/10). Throws ParseError on malformed or empty grids.
Grid parse_grid(const std::string& text, bool in_db);

struct McSettings {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 1;
};

/// For aep the grid is an SNR gain G applied to the whole channel, so each
/// row is sum_j w_j Q-transform(G p_j); for qtransform it is p; for outage
/// it is the threshold gamma_th.
struct SweepRequest {
  ChannelSpec spec;
  Quantity quantity = Quantity::qtransform;
  Grid grid;
  WeightedGaussianSum weights = WeightedGaussianSum::bpsk();
  std::optional<McSettings> mc;
  QuadratureConfig quadrature;
};

struct SweepRow {
  double grid = 0.0;
  double exact = 0.0;
  std::optional<double> asymptotic;
  std::optional<double> mc;
  std::optional<double> mc_stderr;
  Method method = Method::closed_form;
  std::vector<std::string> warnings;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Computes a single row; the building block of cmd_sweep.
SweepRow sweep_row(const SweepRequest& request, std::size_t index);

SweepResult run_sweep(const SweepRequest& request);

inline constexpr std::string_view kSweepHeader = "grid,exact,asymptotic,mc,mc_stderr,method";

/// One CSV line (no newline). Values carry 10 significant digits.
std::string format_row(const SweepRow& row);

/// Formats a value with 10 significant digits, keeping trailing zeros.
std::string format_value(double v);
/// Grid values: shortest form up to 10 significant digits.
std::string format_grid(double v);

struct ValidationRow {
  double grid = 0.0;
  double analytic = 0.0;
  double mc = 0.0;
  double mc_stderr = 0.0;
  double z = 0.0;
  bool pass = true;
};

inline constexpr double kValidationBand = 4.0;

std::vector<ValidationRow> run_validation(const SweepRequest& request);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fadinglab::cli

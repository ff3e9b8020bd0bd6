#include "fadinglab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "fadinglab/error.hpp"
#include "fadinglab/json_io.hpp"
#include "fadinglab/oracle.hpp"

namespace fadinglab::cli {
namespace {

double parse_number(std::string_view text, const char* what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v))
    throw ParseError(std::string(what) + ": cannot parse number '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_linear(double v, bool in_db) { return in_db ? std::pow(10.0, v / 10.0) : v; }

McEstimate monte_carlo(const SweepRequest& request, double x, const McSettings& mc) {
  switch (request.quantity) {
    case Quantity::qtransform:
      return mc_q_transform(request.spec, x, mc.samples, mc.seed);
    case Quantity::outage:
      return mc_outage(request.spec, x, mc.samples, mc.seed);
    case Quantity::aep: {
      const auto sampler = to_sampler(request.spec);
      const auto& terms = request.weights.terms();
      return mc_mean(
          sampler,
          [&](double g) {
            double acc = 0.0;
            for (const auto& t : terms) acc += t.weight * gaussian_q(std::sqrt(x * t.scale * g));
            return acc;
          },
          mc.samples, mc.seed);
    }
  }
  throw Error("unknown quantity");
}

QuadratureConfig quadrature_from_env() {
  QuadratureConfig cfg;
  if (const char* tol = std::getenv("FADINGLAB_TOL"); tol != nullptr && *tol != '\0') {
    cfg.tolerance = parse_number(tol, "FADINGLAB_TOL");
    if (!(cfg.tolerance > 0.0)) throw ParseError("FADINGLAB_TOL must be positive");
  }
  return cfg;
}

}  // namespace

Quantity quantity_from_string(std::string_view name) {
  if (name == "aep") return Quantity::aep;
  if (name == "outage") return Quantity::outage;
  if (name == "qtransform") return Quantity::qtransform;
  throw ParseError("unknown quantity '" + std::string(name) + "' (expected aep, outage or qtransform)");
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::aep:
      return "aep";
    case Quantity::outage:
      return "outage";
    case Quantity::qtransform:
      return "qtransform";
  }
  return "unknown";
}

Grid parse_grid(const std::string& text, bool in_db) {
  Grid grid;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ParseError("grid: expected start:stop:step");
    const double start = parse_number(parts[0], "grid");
    const double stop = parse_number(parts[1], "grid");
    const double step = parse_number(parts[2], "grid");
    if (!(step > 0.0)) throw ParseError("grid: step must be positive");
    if (stop < start) throw ParseError("grid: stop must not be below start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw ParseError("grid: too many points");
    for (std::size_t i = 0; i < count; ++i) grid.display.push_back(start + static_cast<double>(i) * step);
  } else {
    for (auto part : split(text, ',')) grid.display.push_back(parse_number(part, "grid"));
    if (!std::is_sorted(grid.display.begin(), grid.display.end()) ||
        std::adjacent_find(grid.display.begin(), grid.display.end()) != grid.display.end())
      throw ParseError("grid: values must be strictly increasing");
  }
  if (grid.display.empty()) throw ParseError("grid: no points");
  for (double v : grid.display) {
    const double lin = to_linear(v, in_db);
    if (lin < 0.0) throw ParseError("grid: values must be nonnegative");
    grid.linear.push_back(lin);
  }
  return grid;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.10g", v);
  return buf;
}

std::string format_grid(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string format_row(const SweepRow& row) {
  std::string line = format_grid(row.grid);
  line += ',' + format_value(row.exact);
  line += ',' + (row.asymptotic ? format_value(*row.asymptotic) : std::string());
  line += ',' + (row.mc ? format_value(*row.mc) : std::string());
  line += ',' + (row.mc_stderr ? format_value(*row.mc_stderr) : std::string());
  line += ',';
  line += to_string(row.method);
  return line;
}

SweepRow sweep_row(const SweepRequest& request, std::size_t index) {
  const double x = request.grid.linear.at(index);
  const auto mgf = to_mgf(request.spec);
  SweepRow row;
  row.grid = request.grid.display.at(index);

  switch (request.quantity) {
    case Quantity::qtransform: {
      const auto r = q_transform(mgf, x, request.quadrature);
      row.exact = r.value;
      row.method = r.method;
      row.warnings = r.warnings;
      if (x > 0.0) row.asymptotic = q_asymptotic(mgf, x);
      break;
    }
    case Quantity::outage: {
      const auto r = outage(mgf, x);
      row.exact = r.value;
      row.method = r.method;
      row.warnings = r.warnings;
      break;
    }
    case Quantity::aep: {
      double asym = 0.0;
      row.method = Method::euler_integral;
      for (const auto& t : request.weights.terms()) {
        const auto r = q_transform(mgf, x * t.scale, request.quadrature);
        row.exact += t.weight * r.value;
        row.method = r.method;
        row.warnings.insert(row.warnings.end(), r.warnings.begin(), r.warnings.end());
        if (x > 0.0) asym += t.weight * q_asymptotic(mgf, x * t.scale);
      }
      if (x > 0.0) row.asymptotic = asym;
      break;
    }
  }

  if (request.mc) {
    const auto est = monte_carlo(request, x, *request.mc);
    row.mc = est.estimate;
    row.mc_stderr = est.std_error;
  }
  return row;
}

SweepResult run_sweep(const SweepRequest& request) {
  SweepResult result;
  for (std::size_t i = 0; i < request.grid.linear.size(); ++i) result.rows.push_back(sweep_row(request, i));
  return result;
}

std::vector<ValidationRow> run_validation(const SweepRequest& request) {
  SweepRequest with_mc = request;
  if (!with_mc.mc) with_mc.mc = McSettings{};
  to_sampler(with_mc.spec);  // fail before any work when no sampler exists

  std::vector<ValidationRow> rows;
  for (std::size_t i = 0; i < with_mc.grid.linear.size(); ++i) {
    const auto r = sweep_row(with_mc, i);
    ValidationRow v;
    v.grid = r.grid;
    v.analytic = r.exact;
    v.mc = *r.mc;
    v.mc_stderr = *r.mc_stderr;
    const double diff = v.analytic - v.mc;
    if (v.mc_stderr > 0.0) {
      v.z = diff / v.mc_stderr;
      v.pass = std::abs(v.z) <= kValidationBand;
    } else {
      v.z = 0.0;
      v.pass = std::abs(diff) <= 1e-12;
    }
    rows.push_back(v);
  }
  return rows;
}

namespace {

struct CommonOptions {
  std::string spec_path;
  std::string quantity = "qtransform";
  std::string grid;
  bool db = false;
  std::string modulation;
  std::string weights_path;
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 1;
};

SweepRequest build_request(const CommonOptions& o, bool want_mc, std::int64_t default_samples) {
  SweepRequest req;
  req.spec = channel_from_json(read_json_file(o.spec_path));
  check_spec(req.spec);
  req.quantity = quantity_from_string(o.quantity);
  req.grid = parse_grid(o.grid, o.db);
  req.quadrature = quadrature_from_env();
  if (!o.weights_path.empty())
    req.weights = weighted_sum_from_json(read_json_file(o.weights_path));
  else if (!o.modulation.empty() && o.modulation != "bpsk")
    throw ParseError("modulation '" + o.modulation + "' needs an explicit --weights file");
  const std::int64_t samples = o.mc_samples > 0 ? o.mc_samples : default_samples;
  if (want_mc || o.mc_samples > 0) req.mc = McSettings{samples, o.seed};
  return req;
}

void write_warnings(const SweepRow& row, std::ostream& err) {
  for (const auto& w : row.warnings) err << "warning: grid " << format_grid(row.grid) << ": " << w << '\n';
}

int cmd_coeffs(const CommonOptions& o, std::ostream& out) {
  const auto spec = channel_from_json(read_json_file(o.spec_path));
  const auto mgf = to_mgf(spec);
  auto j = to_json(mgf);
  j["diversity_order"] = diversity_order(mgf);
  out << dump_canonical(j) << '\n';
  return exit_code::kOk;
}

int cmd_sweep(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto req = build_request(o, false, kDefaultMcSamples);
  if (req.mc) to_sampler(req.spec);
  out << kSweepHeader << '\n';
  out.flush();
  for (std::size_t i = 0; i < req.grid.linear.size(); ++i) {
    const auto row = sweep_row(req, i);
    write_warnings(row, err);
    out << format_row(row) << '\n';
    out.flush();
  }
  return exit_code::kOk;
}

int cmd_validate(const CommonOptions& o, std::ostream& out) {
  const auto req = build_request(o, true, kDefaultMcSamples);
  const auto rows = run_validation(req);
  out << "grid,analytic,mc,mc_stderr,z,result\n";
  std::size_t passed = 0;
  for (const auto& r : rows) {
    char z[32];
    std::snprintf(z, sizeof z, "%.3f", r.z);
    out << format_grid(r.grid) << ',' << format_value(r.analytic) << ',' << format_value(r.mc) << ','
        << format_value(r.mc_stderr) << ',' << z << ',' << (r.pass ? "pass" : "fail") << '\n';
    passed += r.pass ? 1 : 0;
  }
  const bool all = passed == rows.size();
  out << "summary," << passed << '/' << rows.size() << ',' << (all ? "pass" : "fail") << '\n';
  return all ? exit_code::kOk : exit_code::kValidationFailed;
}

int cmd_asym(const CommonOptions& o, std::ostream& out) {
  CommonOptions q = o;
  q.quantity = "qtransform";
  const auto req = build_request(q, false, 0);
  const auto mgf = to_mgf(req.spec);
  const double order = diversity_order(mgf);
  out << "grid,exact,asymptotic,ratio,diversity\n";
  for (std::size_t i = 0; i < req.grid.linear.size(); ++i) {
    const double p = req.grid.linear[i];
    const double exact = q_transform(mgf, p, req.quadrature).value;
    out << format_grid(req.grid.display[i]) << ',' << format_value(exact) << ',';
    if (p > 0.0) {
      const double asym = q_asymptotic(mgf, p);
      out << format_value(asym) << ',' << format_value(exact / asym);
    } else {
      out << ',';
    }
    out << ',' << format_grid(order) << '\n';
  }
  return exit_code::kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Error and outage probability of fading channels with posynomial MGFs", "fadinglab"};
  app.require_subcommand(1);

  CommonOptions o;
  auto* coeffs = app.add_subcommand("coeffs", "Print the characteristic coefficients of a channel");
  coeffs->add_option("spec", o.spec_path, "Channel JSON file")->required();

  auto add_eval_options = [&](CLI::App* sub, bool with_quantity) {
    sub->add_option("spec", o.spec_path, "Channel JSON file")->required();
    if (with_quantity) sub->add_option("--quantity", o.quantity, "aep | outage | qtransform")->required();
    sub->add_option("--grid", o.grid, "start:stop:step or comma-separated values")->required();
    sub->add_flag("--db", o.db, "Interpret grid values in dB");
  };

  auto* sweep = app.add_subcommand("sweep", "Tabulate a quantity over a grid as CSV");
  add_eval_options(sweep, true);
  auto* validate_cmd = app.add_subcommand("validate", "Compare analytic values against Monte Carlo");
  add_eval_options(validate_cmd, true);
  for (auto* sub : {sweep, validate_cmd}) {
    auto* mod = sub->add_option("--modulation", o.modulation, "bpsk");
    auto* wts = sub->add_option("--weights", o.weights_path, "Weighted Gaussian sum JSON");
    mod->excludes(wts);
    sub->add_option("--mc", o.mc_samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Monte Carlo seed");
  }
  auto* asym = app.add_subcommand("asym", "Compare the Q-transform with its high-SNR asymptote");
  add_eval_options(asym, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kParse;
  }

  try {
    if (*coeffs) return cmd_coeffs(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
    if (*validate_cmd) return cmd_validate(o, out);
    if (*asym) return cmd_asym(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kParse;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kSpec;
  } catch (const UnsupportedSampler& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kUnsupportedSampler;
  } catch (const std::exception& e) {
    out.flush();
    err << "error: " << e.what() << '\n';
    return exit_code::kFailure;
  }
  return exit_code::kFailure;
}

}  // namespace fadinglab::cli

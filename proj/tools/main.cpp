// Command-line harness: preset registry, asymptotic-vs-oracle sweeps,
// symbol tables, decay-slope fits and the whole-line domain experiment.
//
// Exit codes: 0 success, 2 precondition/config errors, 3 oracle
// non-convergence in any row.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfasym/json_io.hpp"
#include "lfasym/multidim.hpp"
#include "lfasym/oracle.hpp"
#include "lfasym/presets.hpp"
#include "lfasym/series1d.hpp"
#include "lfasym/sweep.hpp"

namespace {

using lfasym::Complex;
using lfasym::cli::format_float17;
namespace cli = lfasym::cli;
namespace oracle = lfasym::oracle;
namespace series1d = lfasym::series1d;
namespace multidim = lfasym::multidim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNonConverged = 3;

struct Options {
  std::string preset;
  double s = 2.0;
  double k_min = 4.0;
  double k_max = 16.0;
  int k_count = 5;
  std::vector<double> k_dir;
  int order = 2;
  double tol = 1e-8;
  long long budget = oracle::kDefaultBudget;
  std::string format = "csv";
  std::string out = "-";
  std::string config;
  double lambda = 0.0;
  int m = 1;
  int m_max = 2;
  std::string path = "auto";
  double eps = 1.0;
  double box_halfwidth = 0.0;
  bool two_sided = false;
};

struct OutStream {
  explicit OutStream(const std::string& path) {
    if (!path.empty() && path != "-") {
      file = std::make_unique<std::ofstream>(path);
      if (!*file)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& get() { return file ? *file : std::cout; }
  std::unique_ptr<std::ofstream> file;
};

cli::SweepConfig sweep_config(const Options& o,
                              const std::vector<double>& grid) {
  cli::SweepConfig cfg;
  cfg.s = o.s;
  cfg.k_grid = grid;
  cfg.k_dir = o.k_dir;
  cfg.order = o.order;
  cfg.tol = o.tol;
  cfg.budget = o.budget;
  if (o.path == "1d")
    cfg.path = cli::FormulaPath::one_dim;
  else if (o.path == "nd")
    cfg.path = cli::FormulaPath::multi_dim;
  else if (o.path == "auto")
    cfg.path = cli::FormulaPath::automatic;
  else
    throw std::domain_error("--path must be one of auto, 1d, nd");
  return cfg;
}

cli::Preset resolve_preset(const Options& o, const nlohmann::json& config) {
  if (!o.preset.empty()) return cli::find_preset(o.preset);
  if (config.contains("spec1d")) {
    auto spec = config.at("spec1d").get<series1d::ExpansionSpec1D>();
    return cli::make_polynomial_preset(std::move(spec));
  }
  throw std::domain_error("no --preset given and no spec1d in the config file");
}

cli::Preset with_box(cli::Preset p, const Options& o) {
  if (o.box_halfwidth > 0.0)
    p.box = oracle::DomainBox::cube(p.d, o.box_halfwidth);
  return p;
}

int cmd_presets(std::ostream& out) {
  out << "name,d,has_spec1d,has_hessian,has_fourier_transform\n";
  for (const auto& p : cli::preset_catalog()) {
    out << p.name << ',' << p.d << ',' << (p.spec1d ? 1 : 0) << ','
        << (p.hessian ? 1 : 0) << ',' << (p.fourier_transform ? 1 : 0) << '\n';
  }
  return kExitOk;
}

int cmd_asym(const Options& o, const cli::Preset& preset, bool force_nd,
             std::ostream& out) {
  auto grid = cli::geometric_grid(o.k_min, o.k_max, o.k_count);
  cli::SweepConfig cfg = sweep_config(o, grid);
  if (force_nd) cfg.path = cli::FormulaPath::multi_dim;
  out << "k,s,re_asym,im_asym\n";
  for (double k : grid) {
    const Complex v = cli::asym_value(preset, cfg, k);
    out << format_float17(k) << ',' << format_float17(o.s) << ','
        << format_float17(v.real()) << ',' << format_float17(v.imag()) << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const Options& o, const cli::Preset& preset,
               std::ostream& out) {
  auto grid = cli::geometric_grid(o.k_min, o.k_max, o.k_count);
  const cli::SweepConfig cfg = sweep_config(o, grid);
  out << "k,s,re_oracle,im_oracle,abs_err_est,evaluations,converged\n";
  bool all_converged = true;
  for (double k : grid) {
    const auto q = cli::oracle_value(preset, cfg, k);
    all_converged = all_converged && q.converged;
    out << format_float17(k) << ',' << format_float17(o.s) << ','
        << format_float17(q.value.real()) << ','
        << format_float17(q.value.imag()) << ','
        << format_float17(q.abs_error_estimate) << ',' << q.evaluations << ','
        << (q.converged ? 1 : 0) << '\n';
  }
  return all_converged ? kExitOk : kExitNonConverged;
}

int cmd_sweep(const Options& o, const cli::Preset& preset,
              const std::string& out_path) {
  if (o.format != "json" && o.format != "csv")
    throw std::domain_error("--format must be csv or json");
  const auto fmt = o.format == "json" ? cli::ReportFormat::json
                                      : cli::ReportFormat::csv;
  auto grid = cli::geometric_grid(o.k_min, o.k_max, o.k_count);
  const auto rows = cli::run_sweep(preset, sweep_config(o, grid));
  cli::emit_report(rows, fmt, out_path);
  for (const auto& r : rows)
    if (!r.oracle_converged) return kExitNonConverged;
  return kExitOk;
}

int cmd_symbols(const Options& o, const cli::Preset& preset,
                std::ostream& out) {
  if (!preset.spec1d)
    throw std::domain_error("symbols: preset carries no 1d expansion spec");
  const auto& spec = *preset.spec1d;
  const double k = o.k_min;
  const double lambda = o.lambda > 0.0 ? o.lambda : std::pow(k, o.s);
  out << "m,lambda,k,re,im,abs,ratio_to_prev\n";
  double prev = 0.0;
  for (int m = 0; m <= o.m_max; ++m) {
    const auto sym = o.two_sided
                         ? series1d::symbol_Im_two_sided(spec, m, lambda, k)
                         : series1d::symbol_Im(spec, m, lambda, k);
    const double mag = std::abs(sym.value);
    out << m << ',' << format_float17(lambda) << ',' << format_float17(k)
        << ',' << format_float17(sym.value.real()) << ','
        << format_float17(sym.value.imag()) << ',' << format_float17(mag);
    if (m > 0 && prev > 0.0)
      out << ',' << format_float17(mag / prev);
    else
      out << ',';
    out << '\n';
    prev = mag;
  }
  return kExitOk;
}

int cmd_decay_fit(const Options& o, const cli::Preset& preset,
                  std::ostream& out) {
  if (!preset.spec1d)
    throw std::domain_error("decay-fit: preset carries no 1d expansion spec");
  const auto& spec = *preset.spec1d;
  auto grid = cli::geometric_grid(o.k_min, o.k_max, o.k_count);
  const bool classical = o.path == "erdelyi";

  std::vector<double> mags;
  out << "k,abs_value\n";
  for (double k : grid) {
    const double lambda = std::pow(k, o.s);
    const Complex v =
        classical ? series1d::erdelyi_term(spec, o.m, lambda, k)
                  : series1d::symbol_Im(spec, o.m, lambda, k).value;
    mags.push_back(std::abs(v));
    out << format_float17(k) << ',' << format_float17(mags.back()) << '\n';
  }
  const double slope = cli::fit_decay_slope(grid, mags);
  const double predicted =
      classical ? series1d::erdelyi_term_order(spec, o.m, o.s)
                : series1d::decay_order_Im(spec, o.m, o.s);
  out << "# fitted_slope," << format_float17(slope) << '\n';
  out << "# predicted_order," << format_float17(predicted) << '\n';
  out << "# resummed_order,"
      << format_float17(series1d::decay_order_Im(spec, o.m, o.s)) << '\n';
  out << "# classical_term_order,"
      << format_float17(series1d::erdelyi_term_order(spec, o.m, o.s)) << '\n';
  return kExitOk;
}

int cmd_domain_ext(const Options& o, const cli::Preset& preset,
                   std::ostream& out) {
  if (!preset.fourier_transform || !preset.hessian)
    throw std::domain_error(
        "domain-ext: preset needs a Fourier transform and a Hessian model");
  auto grid = cli::geometric_grid(o.k_min, o.k_max, o.k_count);
  const auto dir = cli::unit_direction(o.k_dir, preset.d);

  const double sigma =
      oracle::inf_sigma(preset.evaluator, o.eps, preset.box);
  const double C = preset.l2_norm_sq.value_or(0.0);
  const double f0 = preset.hessian->f0;

  double tail_sq = 0.0;
  if (preset.tail_sq_outside) {
    double half_width = preset.box.hi[0];
    for (double h : preset.box.hi) half_width = std::min(half_width, h);
    tail_sq = preset.tail_sq_outside(half_width);
  }

  out << "k,s,re_recon,im_recon,re_asym,im_asym,rel_err,tail_bound,"
         "bound_ratio,converged\n";
  bool all_converged = true;
  std::vector<double> ks_pow, ratios;
  for (double k : grid) {
    std::vector<double> kvec = dir;
    for (double& v : kvec) v *= k;
    const auto res = oracle::integrate_pbar(
        preset.evaluator, preset.fourier_transform, kvec, o.s, preset.box,
        o.tol, o.budget, tail_sq);
    const Complex asym = multidim::asym_P_nd(*preset.hessian, o.s, kvec);
    const double rel = std::abs(res.p_reconstructed - asym) / std::abs(asym);
    const double bound = oracle::exterior_tail_bound(C, f0, sigma, k, o.s);
    const double ratio = bound / std::abs(asym);
    all_converged = all_converged && res.pbar.converged;
    ks_pow.push_back(std::pow(k, o.s));
    ratios.push_back(ratio);
    out << format_float17(k) << ',' << format_float17(o.s) << ','
        << format_float17(res.p_reconstructed.real()) << ','
        << format_float17(res.p_reconstructed.imag()) << ','
        << format_float17(asym.real()) << ',' << format_float17(asym.imag())
        << ',' << format_float17(rel) << ',' << format_float17(bound) << ','
        << format_float17(ratio) << ',' << (res.pbar.converged ? 1 : 0)
        << '\n';
  }

  // slope of log(bound/|P|) against k^s; should sit near -sigma
  if (grid.size() >= 4) {
    double su = 0.0, sv = 0.0;
    const std::size_t n = ks_pow.size();
    std::vector<double> lv(n);
    for (std::size_t i = 0; i < n; ++i) {
      lv[i] = std::log(ratios[i]);
      su += ks_pow[i];
      sv += lv[i];
    }
    const double mu = su / double(n), mv = sv / double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (ks_pow[i] - mu) * (ks_pow[i] - mu);
      sxy += (ks_pow[i] - mu) * (lv[i] - mv);
    }
    out << "# log_ratio_slope_vs_k_pow_s," << format_float17(sxy / sxx) << '\n';
    out << "# minus_sigma," << format_float17(-sigma) << '\n';
  }
  return all_converged ? kExitOk : kExitNonConverged;
}

int run(int argc, char** argv) {
  CLI::App app{"Asymptotics of Laplace-Fourier integrals: closed-form "
               "evaluators, a brute-force oscillatory-quadrature oracle and "
               "sweep tooling"};
  app.require_subcommand(1);
  app.fallthrough(true);

  Options o;
  app.add_option("--preset", o.preset, "preset name (see `presets`)");
  app.add_option("--s", o.s, "exponent s coupling lambda = k^s");
  app.add_option("--k-min", o.k_min, "smallest k of the grid");
  app.add_option("--k-max", o.k_max, "largest k of the grid");
  app.add_option("--k-count", o.k_count, "number of grid points (geometric)");
  app.add_option("--k-dir", o.k_dir,
                 "direction of k for d > 1 (normalized internally)")
      ->delimiter(',');
  app.add_option("--order", o.order, "correction order 0, 1 or 2")
      ->check(CLI::Range(0, 2));
  app.add_option("--tol", o.tol, "relative tolerance of the oracle");
  app.add_option("--budget", o.budget, "integrand evaluation budget");
  app.add_option("--format", o.format, "csv or json (sweep only)");
  app.add_option("--out", o.out, "output path, '-' for stdout");
  app.add_option("--config", o.config, "JSON config file; flags override it");
  app.add_option("--lambda", o.lambda, "fixed lambda (symbols)");
  app.add_option("--m", o.m, "symbol index (decay-fit)");
  app.add_option("--m-max", o.m_max, "largest symbol index (symbols)");
  app.add_option("--path", o.path,
                 "formula path: auto, 1d, nd (decay-fit: resummed, erdelyi)");
  app.add_option("--eps", o.eps, "excluded-ball radius for the gap infima");
  app.add_option("--box-halfwidth", o.box_halfwidth,
                 "override the preset integration box with [-h, h]^d");
  app.add_flag("--two-sided", o.two_sided, "use two-sided symbols (symbols)");

  auto* sc_presets = app.add_subcommand("presets", "list the preset catalog");
  auto* sc_asym1d = app.add_subcommand("asym1d", "1d asymptotic values");
  auto* sc_asymnd = app.add_subcommand("asymnd", "d-dim asymptotic values");
  auto* sc_oracle = app.add_subcommand("oracle", "quadrature oracle values");
  auto* sc_sweep = app.add_subcommand("sweep", "asymptotics vs oracle");
  auto* sc_symbols = app.add_subcommand("symbols", "symbol values and ratios");
  auto* sc_decay = app.add_subcommand("decay-fit", "log-log decay slopes");
  auto* sc_domain =
      app.add_subcommand("domain-ext", "whole-line reconstruction experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    nlohmann::json config = nlohmann::json::object();
    if (!o.config.empty()) {
      std::ifstream in(o.config);
      if (!in)
        throw std::runtime_error("cannot read config file '" + o.config + "'");
      in >> config;
      // flags given on the command line win over config values
      auto merge = [&](const char* flag, const char* key, auto& target) {
        using T = std::remove_reference_t<decltype(target)>;
        if (config.contains(key) && app.count(flag) == 0)
          target = config.at(key).get<T>();
      };
      merge("--preset", "preset", o.preset);
      merge("--s", "s", o.s);
      merge("--k-min", "k_min", o.k_min);
      merge("--k-max", "k_max", o.k_max);
      merge("--k-count", "k_count", o.k_count);
      merge("--k-dir", "k_dir", o.k_dir);
      merge("--order", "order", o.order);
      merge("--tol", "tol", o.tol);
      merge("--budget", "budget", o.budget);
      merge("--format", "format", o.format);
      merge("--out", "out", o.out);
      merge("--lambda", "lambda", o.lambda);
      merge("--m", "m", o.m);
      merge("--m-max", "m_max", o.m_max);
      merge("--path", "path", o.path);
      merge("--eps", "eps", o.eps);
      merge("--box-halfwidth", "box_halfwidth", o.box_halfwidth);
    }

    if (sc_presets->parsed()) {
      OutStream out(o.out);
      return cmd_presets(out.get());
    }

    const cli::Preset preset = with_box(resolve_preset(o, config), o);

    if (sc_sweep->parsed()) return cmd_sweep(o, preset, o.out);

    OutStream out(o.out);
    if (sc_asym1d->parsed()) return cmd_asym(o, preset, false, out.get());
    if (sc_asymnd->parsed()) return cmd_asym(o, preset, true, out.get());
    if (sc_oracle->parsed()) return cmd_oracle(o, preset, out.get());
    if (sc_symbols->parsed()) return cmd_symbols(o, preset, out.get());
    if (sc_decay->parsed()) return cmd_decay_fit(o, preset, out.get());
    if (sc_domain->parsed()) return cmd_domain_ext(o, preset, out.get());
    throw std::domain_error("no subcommand given");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }

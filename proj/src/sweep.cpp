#include "lfasym/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lfasym/series1d.hpp"

namespace lfasym::cli {

namespace {

std::string fmt17(double v) { return format_float17(v); }

// JSON has no inf/nan literals
std::string fmt17_json(double v) {
  return std::isfinite(v) ? format_float17(v) : "null";
}

FormulaPath resolve_path(const Preset& preset, FormulaPath requested) {
  if (requested != FormulaPath::automatic) return requested;
  if (preset.d == 1 && preset.spec1d) return FormulaPath::one_dim;
  if (preset.hessian) return FormulaPath::multi_dim;
  throw std::domain_error("preset '" + preset.name +
                          "' carries no data for an asymptotic formula");
}

std::vector<double> k_vector(const Preset& preset, const SweepConfig& cfg,
                             double k) {
  auto dir = unit_direction(cfg.k_dir, preset.d);
  for (double& v : dir) v *= k;
  return dir;
}

void self_check(const Preset& preset) {
  if (!preset.evaluator) return;
  const double rho = oracle::inf_rho(preset.evaluator, 0.1, preset.box);
  if (!(rho > 0.0))
    throw std::domain_error("preset '" + preset.name +
                            "': isolated-minimum check failed (rho <= 0)");
  if (preset.fourier_transform) {
    const double sigma = oracle::inf_sigma(preset.evaluator, 0.1, preset.box);
    if (!(sigma > 0.0))
      throw std::domain_error("preset '" + preset.name +
                              "': whole-line gap check failed (sigma <= 0)");
  }
}

}  // namespace

Complex asym_value(const Preset& preset, const SweepConfig& cfg, double k) {
  const FormulaPath path = resolve_path(preset, cfg.path);
  if (path == FormulaPath::one_dim) {
    const auto& spec = *preset.spec1d;
    if (spec.domain.kind != series1d::DomainKind::one_sided &&
        std::abs(spec.alpha - 2.0) < 1e-12 &&
        std::abs(spec.beta - 1.0) < 1e-12)
      return series1d::asym_P_1d(spec, cfg.s, k, cfg.order);
    // generic even-alpha path: symbol assembly e^{-lambda f_crit}/alpha * sum I_m
    const double lambda = std::pow(k, cfg.s);
    Complex sum{0.0, 0.0};
    for (int m = 0; m <= cfg.order; ++m) {
      if (spec.domain.kind == series1d::DomainKind::one_sided)
        sum += series1d::symbol_Im(spec, m, lambda, k).value;
      else
        sum += series1d::symbol_Im_two_sided(spec, m, lambda, k).value;
    }
    return std::exp(-lambda * spec.f_crit) / spec.alpha * sum;
  }
  if (!preset.hessian)
    throw std::domain_error("preset '" + preset.name + "' has no Hessian model");
  const auto kvec = k_vector(preset, cfg, k);
  return multidim::asym_P_nd(*preset.hessian, cfg.s, kvec);
}

oracle::QuadratureResult oracle_value(const Preset& preset,
                                      const SweepConfig& cfg, double k) {
  const double lambda = std::pow(k, cfg.s);
  if (preset.fourier_transform) {
    const auto kvec = k_vector(preset, cfg, k);
    double tail = 0.0;
    if (preset.tail_sq_outside) {
      double half_width = preset.box.hi[0];
      for (double h : preset.box.hi) half_width = std::min(half_width, h);
      tail = preset.tail_sq_outside(half_width);
    }
    auto res = oracle::integrate_pbar(preset.evaluator,
                                      preset.fourier_transform, kvec, cfg.s,
                                      preset.box, cfg.tol, cfg.budget, tail);
    oracle::QuadratureResult out = res.pbar;
    out.value = res.p_reconstructed;
    return out;
  }
  if (preset.d == 1) {
    double beta = preset.spec1d ? preset.spec1d->beta : 1.0;
    auto f = [&preset](double x) { return preset.f1(x); };
    return oracle::integrate_1d(f, beta, k, lambda, preset.box.lo[0],
                                preset.box.hi[0], cfg.tol, cfg.budget);
  }
  const auto kvec = k_vector(preset, cfg, k);
  return oracle::integrate_nd(preset.evaluator, kvec, lambda, preset.box,
                              cfg.tol, cfg.budget);
}

std::vector<SweepRow> run_sweep(const Preset& preset, const SweepConfig& cfg) {
  if (cfg.k_grid.empty())
    throw std::domain_error("run_sweep: empty k grid");
  self_check(preset);

  std::vector<double> grid = cfg.k_grid;
  std::sort(grid.begin(), grid.end());

  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double k : grid) {
    SweepRow row;
    row.k = k;
    row.s = cfg.s;
    row.p_asym = asym_value(preset, cfg, k);
    const auto q = oracle_value(preset, cfg, k);
    row.p_oracle = q.value;
    row.oracle_converged = q.converged;
    row.abs_err = std::abs(row.p_asym - row.p_oracle);
    const double mag = std::abs(row.p_oracle);
    row.rel_err = mag > 0.0
                      ? row.abs_err / mag
                      : (row.abs_err == 0.0
                             ? 0.0
                             : std::numeric_limits<double>::infinity());
    rows.push_back(row);
  }
  return rows;
}

double fit_decay_slope(std::span<const double> xs,
                       std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 4)
    throw std::domain_error("fit_decay_slope: need >= 4 matched points");
  const std::size_t n = xs.size();
  double su = 0.0, sv = 0.0;
  std::vector<double> u(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
      throw std::domain_error("fit_decay_slope: points must be positive");
    u[i] = std::log(xs[i]);
    v[i] = std::log(ys[i]);
    su += u[i];
    sv += v[i];
  }
  const double mu = su / double(n), mv = sv / double(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (u[i] - mu) * (u[i] - mu);
    sxy += (u[i] - mu) * (v[i] - mv);
  }
  if (!(sxx > 0.0))
    throw std::domain_error("fit_decay_slope: degenerate abscissae");
  return sxy / sxx;
}

void emit_report(std::span<const SweepRow> rows, ReportFormat format,
                 std::ostream& out) {
  if (format == ReportFormat::csv) {
    out << "k,s,re_asym,im_asym,re_oracle,im_oracle,abs_err,rel_err\n";
    for (const SweepRow& r : rows) {
      out << fmt17(r.k) << ',' << fmt17(r.s) << ',' << fmt17(r.p_asym.real())
          << ',' << fmt17(r.p_asym.imag()) << ',' << fmt17(r.p_oracle.real())
          << ',' << fmt17(r.p_oracle.imag()) << ',' << fmt17(r.abs_err) << ','
          << fmt17(r.rel_err) << '\n';
    }
    return;
  }
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "  {\"k\": " << fmt17_json(r.k) << ", \"s\": " << fmt17_json(r.s)
        << ", \"p_asym\": {\"re\": " << fmt17_json(r.p_asym.real())
        << ", \"im\": " << fmt17_json(r.p_asym.imag())
        << "}, \"p_oracle\": {\"re\": " << fmt17_json(r.p_oracle.real())
        << ", \"im\": " << fmt17_json(r.p_oracle.imag())
        << "}, \"abs_err\": " << fmt17_json(r.abs_err)
        << ", \"rel_err\": " << fmt17_json(r.rel_err)
        << ", \"oracle_converged\": "
        << (r.oracle_converged ? "true" : "false") << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void emit_report(std::span<const SweepRow> rows, ReportFormat format,
                 const std::string& path) {
  if (path.empty() || path == "-") {
    emit_report(rows, format, std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("emit_report: cannot open '" + path +
                             "' for writing");
  emit_report(rows, format, out);
  if (!out.good())
    throw std::runtime_error("emit_report: write to '" + path + "' failed");
}

std::vector<double> geometric_grid(double k_min, double k_max, int count) {
  if (!(k_min > 0.0) || !(k_max >= k_min) || count < 1)
    throw std::domain_error("geometric_grid: invalid parameters");
  std::vector<double> grid;
  grid.reserve(std::size_t(count));
  if (count == 1) {
    grid.push_back(k_min);
    return grid;
  }
  const double ratio = std::log(k_max / k_min) / double(count - 1);
  for (int i = 0; i < count; ++i)
    grid.push_back(k_min * std::exp(ratio * double(i)));
  grid.back() = k_max;
  return grid;
}

std::string format_float17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> unit_direction(std::vector<double> dir, int d) {
  if (dir.empty()) {
    dir.assign(std::size_t(d), 0.0);
    dir[0] = 1.0;
    return dir;
  }
  if (int(dir.size()) != d)
    throw std::domain_error("k direction has wrong dimension");
  double n2 = 0.0;
  for (double v : dir) n2 += v * v;
  if (!(n2 > 0.0)) throw std::domain_error("k direction must be nonzero");
  const double inv = 1.0 / std::sqrt(n2);
  for (double& v : dir) v *= inv;
  return dir;
}

}  // namespace lfasym::cli

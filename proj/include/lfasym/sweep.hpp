#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lfasym/oracle.hpp"
#include "lfasym/presets.hpp"
#include "lfasym/types.hpp"

namespace lfasym::cli {

// One point of an asymptotic-vs-oracle comparison.
struct SweepRow {
  double k = 0.0;
  double s = 0.0;
  Complex p_asym{0.0, 0.0};
  Complex p_oracle{0.0, 0.0};
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool oracle_converged = true;
};

enum class FormulaPath { automatic, one_dim, multi_dim };

struct SweepConfig {
  double s = 2.0;
  std::vector<double> k_grid;
  std::vector<double> k_dir;  // direction for d > 1; normalized internally
  int order = 2;
  double tol = 1e-8;
  long long budget = oracle::kDefaultBudget;
  FormulaPath path = FormulaPath::automatic;
};

// Asymptotic value for one preset at one k, along the configured path. For
// alpha = 2, beta = 1 specs this is the closed second-order formula; other
// 1d specs assemble the two-sided symbols up to the requested order.
Complex asym_value(const Preset& preset, const SweepConfig& cfg, double k);

// Oracle value: direct quadrature on bounded domains, the subtracted
// whole-space integral for presets carrying a closed-form transform.
oracle::QuadratureResult oracle_value(const Preset& preset,
                                      const SweepConfig& cfg, double k);

// Runs the preset self-check (positivity of the infimum gaps), then fills one
// row per grid point, in ascending k. Oracle non-convergence flags the row
// and the sweep continues.
std::vector<SweepRow> run_sweep(const Preset& preset, const SweepConfig& cfg);

/// Least-squares slope of log ys vs log xs; needs >= 4 points, ys > 0.
double fit_decay_slope(std::span<const double> xs, std::span<const double> ys);

enum class ReportFormat { csv, json };

// CSV header is exactly
//   k,s,re_asym,im_asym,re_oracle,im_oracle,abs_err,rel_err
// and all floats carry 17 significant digits; JSON mirrors the SweepRow
// field names. `path` may be "-" for stdout.
void emit_report(std::span<const SweepRow> rows, ReportFormat format,
                 std::ostream& out);
void emit_report(std::span<const SweepRow> rows, ReportFormat format,
                 const std::string& path);

/// Geometric grid from k_min to k_max inclusive.
std::vector<double> geometric_grid(double k_min, double k_max, int count);

/// Float with 17 significant digits (round-trip safe).
std::string format_float17(double v);

/// Unit-normalized copy of a direction vector (defaults to e_1 if empty).
std::vector<double> unit_direction(std::vector<double> dir, int d);

}  // namespace lfasym::cli

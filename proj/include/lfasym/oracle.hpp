#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lfasym/types.hpp"

namespace lfasym::oracle {

inline constexpr long long kDefaultBudget = 20'000'000;

// Result of a brute-force quadrature. `converged` implies the summed
// Kronrod-minus-Gauss error estimate fell below the requested relative
// tolerance before the evaluation budget ran out.
struct QuadratureResult {
  Complex value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  long long evaluations = 0;
  bool converged = false;
};

struct DomainBox {
  std::vector<double> lo;
  std::vector<double> hi;

  int dim() const { return int(lo.size()); }
  void validate() const;

  static DomainBox interval(double lo, double hi);
  static DomainBox cube(int d, double half_width);  // [-h, h]^d
  DomainBox scaled(double factor) const;            // box stretched about 0
};

using Field = std::function<double(std::span<const double>)>;
using FourierTransform = std::function<Complex(std::span<const double>)>;

// int_lo^hi e^{-lambda f(x)} x^{beta-1} e^{ikx} dx by adaptive Gauss-Kronrod
// 7/15 panels. Initial panel width is capped at pi/max(|k|,1) so each panel
// sees at most half an oscillation; for beta < 1 the panel touching 0 is
// mapped by x = t^{1/beta} to remove the endpoint singularity. Non-integer
// beta with lo < 0 is rejected.
QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double beta, double k, double lambda, double lo,
                              double hi, double tol,
                              long long budget = kDefaultBudget,
                              long long min_initial_panels = 0);

// int_box e^{-lambda f(x)} e^{ik.x} dx by iterated 1d quadrature, the
// innermost axis carrying the oscillation of its own k component. d <= 3.
QuadratureResult integrate_nd(const Field& f, std::span<const double> k,
                              double lambda, const DomainBox& box, double tol,
                              long long budget = kDefaultBudget);

struct PbarResult {
  QuadratureResult pbar;           // the subtracted integral
  Complex subtracted_transform{};  // |k|^s * ftilde(k)
  Complex p_reconstructed{};       // pbar - |k|^s * ftilde(k)
};

// Subtracted whole-space integral
//   int_box [e^{-|k|^s f} - 1 + |k|^s f] e^{ik.x} dx
// together with the reconstruction P(k) = Pbar(k) - |k|^s ftilde(k).
// `tail_sq_integral` is int f^2 outside the box; its contribution
// (<= |k|^{2s} * tail/2) is folded into the error estimate. k = 0 is
// excluded (the delta contribution is dropped).
PbarResult integrate_pbar(const Field& f, const FourierTransform& f_fourier,
                          std::span<const double> k, double s,
                          const DomainBox& box, double tol,
                          long long budget = kDefaultBudget,
                          double tail_sq_integral = 0.0);

// Dense-grid infimum of f(x) - f(0) over box minus the ball of radius eps
// about the origin. A non-positive return reports a condition violation; it
// is not an error. grid_n = 0 picks a dimension-dependent default.
double inf_rho(const Field& f, double eps, const DomainBox& box,
               int grid_n = 0);

// Grid infimum of |f(0)| - |f(x)| over box minus the eps-ball, requiring
// f(0) < 0. The region outside the box is covered by the maximum of |f| on
// the boundary shell of the grid, which bounds the exterior for presets
// whose |f| decays beyond the box.
double inf_sigma(const Field& f, double eps, const DomainBox& box,
                 int grid_n = 0);

// Bound on the exterior contribution to the subtracted integral:
//   C/(|f0|-sigma)^2 * { e^{-|k|^s (f0+sigma)} - 1 + |k|^s (f0+sigma) },
// with C = int f^2. Requires |f0| > sigma.
double exterior_tail_bound(double C, double f0, double sigma, double k_mag,
                           double s);

}  // namespace lfasym::oracle

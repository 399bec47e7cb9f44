#pragma once

#include <span>
#include <vector>

#include "lfasym/specfun.hpp"
#include "lfasym/types.hpp"

namespace lfasym::series1d {

enum class DomainKind { one_sided, two_sided, real_line };

// Integration domain of the underlying integral: (0, b), (-b1, b2) or the
// whole line. The expansion data itself never depends on the endpoints.
struct Domain {
  DomainKind kind = DomainKind::two_sided;
  double b = 0.0;   // one_sided: (0, b)
  double b1 = 0.0;  // two_sided: (-b1, b2)
  double b2 = 0.0;

  static Domain one_sided(double b);
  static Domain two_sided(double b1, double b2);
  static Domain real_line();
};

// Problem data for the one-dimensional expansion: the exponent of the leading
// phase term (alpha), the amplitude exponent (beta), the phase expansion
// coefficients a_0, a_1, ... about the critical point (shifted to 0), and the
// value of f at the critical point.
struct ExpansionSpec1D {
  double alpha = 2.0;
  double beta = 1.0;
  std::vector<double> a;
  double f_crit = 0.0;
  Domain domain = Domain::real_line();

  double a_coeff(int j) const {
    return (j >= 0 && j < int(a.size())) ? a[std::size_t(j)] : 0.0;
  }
  bool alpha_is_even_integer() const;
  bool beta_is_positive_integer() const;

  // Throws std::domain_error on any invariant violation: a0 > 0, alpha >= 1,
  // two-sided / whole-line domains need even integer alpha, and the
  // whole-line case additionally needs f_crit < 0.
  void validate() const;
};

// One resummed symbol I_m(lambda, k) together with its series metadata.
struct SymbolValue {
  int m = 0;
  double lambda = 0.0;
  double k = 0.0;
  Complex value{0.0, 0.0};
  specfun::SeriesValue series;
};

// First- and second-order relative corrections for alpha = 2, beta = 1.
struct Correction12 {
  double A = 0.0;
  double B = 0.0;
  double x2 = 0.0;
};

/// Combined scale 4/(a0*lambda) * (k/4)^alpha controlling all closed forms.
double x_alpha(const ExpansionSpec1D& spec, double lambda, double k);

// Partial exponential Bell polynomial B_{m,j}(x_1, ..., x_{m-j+1}), computed
// by exact enumeration of the index tuples with sum j_i = j and
// sum i*j_i = m. Standard convention: each monomial carries
// m! / (prod j_i! * prod (i!)^{j_i}).
double bell_polynomial(int m, int j, std::span<const double> x);

// Derivative coefficient d_{m,n}: the m-th derivative at 0 of the normalized
// phase series raised to the power -nu, with nu = (n_index + beta)/alpha.
// Evaluated via Bell polynomials and gamma ratios; d_{0,n} = 1.
double d_coeff(const ExpansionSpec1D& spec, int m, int n_index, double nu);

// Independent evaluation of d_{m,n} by truncated formal power-series
// arithmetic (series log/exp); shares no code with d_coeff past the raw
// coefficients.
double d_coeff_oracle(const ExpansionSpec1D& spec, int m, int n_index,
                      double nu);

// One-sided resummed symbol I_m(lambda, k): Fox-Wright assembly over the Bell
// polynomials of the phase coefficients. Requires alpha > 1, or alpha = 1
// with k/(a0*lambda) < 1.
SymbolValue symbol_Im(const ExpansionSpec1D& spec, int m, double lambda,
                      double k, const specfun::SeriesControl& ctl = {});

// Two-sided symbol: the parity-filtered sum (even Fourier index for odd beta,
// odd index for even beta), doubled to account for both half-intervals.
// Requires even integer alpha and positive integer beta.
SymbolValue symbol_Im_two_sided(const ExpansionSpec1D& spec, int m,
                                double lambda, double k,
                                const specfun::SeriesControl& ctl = {});

// n-th term of the classical (Erdelyi) expansion of the same integral,
// Gamma(nu) c_n / lambda^nu with Fourier amplitude coefficients; used by the
// harness to contrast term-wise decay against the resummed symbols.
Complex erdelyi_term(const ExpansionSpec1D& spec, int n, double lambda,
                     double k);

/// Corrections A and B (alpha = 2, beta = 1, symmetric domain).
Correction12 corrections_AB(const ExpansionSpec1D& spec, double lambda,
                            double k);

// Asymptotic evaluation of P(k) = int e^{-k^s f} e^{ikx} dx for alpha = 2,
// beta = 1 on a symmetric or whole-line domain:
//   e^{-k^s f_crit} / k^{s/2} * sqrt(pi/a0) * e^{-x2} * [1 + iA/k + B/k^2]
// truncated at the requested order (0, 1 or 2), with x2 = k^{2-s}/(4 a0).
Complex asym_P_1d(const ExpansionSpec1D& spec, double s, double k, int order);

/// Predicted decay exponent of |I_m(k^s, k)|: -s(m + beta)/alpha.
double decay_order_Im(const ExpansionSpec1D& spec, int m, double s);

/// Decay exponent of the n-th classical term: -s(n + beta)/alpha + n.
double erdelyi_term_order(const ExpansionSpec1D& spec, int n, double s);

// Closed forms for the leading two-sided/one-sided symbols, used as
// independent cross-checks of the series assembly.
Complex symbol_I0_alpha1_closed(const ExpansionSpec1D& spec, double lambda,
                                double k);
Complex symbol_I0_alpha2_closed(const ExpansionSpec1D& spec, double lambda,
                                double k);
Complex symbol_I0_alpha4_closed(const ExpansionSpec1D& spec, double lambda,
                                double k);

}  // namespace lfasym::series1d

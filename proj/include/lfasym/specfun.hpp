#pragma once

#include "lfasym/types.hpp"

namespace lfasym::specfun {

// Truncation control shared by every series in the library.
struct SeriesControl {
  double rel_tol = 1e-14;
  int max_terms = 10000;
};

// Outcome of a truncated series evaluation. A non-converged result still
// carries the partial value; `converged` implies
// tail_estimate <= rel_tol * |value|.
struct SeriesValue {
  Complex value{0.0, 0.0};
  int terms_used = 0;
  double tail_estimate = 0.0;
  bool converged = false;
};

/// ln Gamma(x) for x > 0, relative error below 1e-13 (Lanczos evaluation).
double ln_gamma(double x);

/// Gamma(x + a) / Gamma(x), evaluated as exp(ln_gamma(x+a) - ln_gamma(x)) so
/// large arguments never overflow.
double gamma_ratio(double x, double a);

/// Gamma(n + 1/2) = (2n)! sqrt(pi) / (n! 4^n), n >= 0.
double gamma_half_integer(int n);

/// Kummer confluent hypergeometric 1F1(a; b; z) by direct series.
SeriesValue hyp1f1(double a, double b, double z, const SeriesControl& ctl = {});

/// Generalized hypergeometric 0F2(; b1, b2; z) by direct series.
SeriesValue hyp0f2(double b1, double b2, double z, const SeriesControl& ctl = {});

// Fox-Wright 1Psi0[(rho, sigma); z] = sum_n Gamma(rho + n*sigma) z^n / n!.
// Entire in z for sigma < 1; for sigma = 1 the series is a binomial series
// requiring |z| < 1. Outside those regions the d'Alembert ratio test fails
// and a DivergenceError is thrown.
SeriesValue fox_wright_1psi0(double rho, double sigma, Complex z,
                             const SeriesControl& ctl = {});

}  // namespace lfasym::specfun

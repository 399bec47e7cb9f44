#include "lfasym/series1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lfasym/detail/accum.hpp"

namespace lfasym::series1d {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

// c = a * b truncated at order n (all series indexed by power of x).
std::vector<double> mul_trunc(const std::vector<double>& a,
                              const std::vector<double>& b, int n) {
  std::vector<double> c(std::size_t(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    if (a[std::size_t(i)] == 0.0) continue;
    for (int r = 0; i + r <= n; ++r)
      c[std::size_t(i + r)] += a[std::size_t(i)] * b[std::size_t(r)];
  }
  return c;
}

void require_positive_args(double lambda, double k, const char* who) {
  if (!(lambda > 0.0) || !(k > 0.0))
    throw std::domain_error(std::string(who) + ": need lambda > 0 and k > 0");
}

double leading_coeff(const ExpansionSpec1D& spec, const char* who) {
  if (spec.a.empty() || !(spec.a[0] > 0.0))
    throw std::domain_error(std::string(who) + ": need a0 > 0");
  return spec.a[0];
}

}  // namespace

Domain Domain::one_sided(double b) {
  Domain d;
  d.kind = DomainKind::one_sided;
  d.b = b;
  return d;
}

Domain Domain::two_sided(double b1, double b2) {
  Domain d;
  d.kind = DomainKind::two_sided;
  d.b1 = b1;
  d.b2 = b2;
  return d;
}

Domain Domain::real_line() {
  Domain d;
  d.kind = DomainKind::real_line;
  return d;
}

bool ExpansionSpec1D::alpha_is_even_integer() const {
  return near_integer(alpha) &&
         std::llround(alpha) % 2 == 0 && alpha >= 2.0;
}

bool ExpansionSpec1D::beta_is_positive_integer() const {
  return beta > 0.0 && near_integer(beta);
}

void ExpansionSpec1D::validate() const {
  if (a.empty() || !(a[0] > 0.0))
    throw std::domain_error("ExpansionSpec1D: a0 must be positive");
  if (!(alpha >= 1.0))
    throw std::domain_error("ExpansionSpec1D: alpha must be >= 1");
  if (!(beta > 0.0))
    throw std::domain_error("ExpansionSpec1D: beta must be positive");
  switch (domain.kind) {
    case DomainKind::one_sided:
      if (!(domain.b > 0.0))
        throw std::domain_error("ExpansionSpec1D: one-sided bound must be > 0");
      break;
    case DomainKind::two_sided:
      if (!(domain.b1 > 0.0) || !(domain.b2 > 0.0))
        throw std::domain_error("ExpansionSpec1D: two-sided bounds must be > 0");
      if (!alpha_is_even_integer())
        throw std::domain_error(
            "ExpansionSpec1D: two-sided domain needs even integer alpha");
      break;
    case DomainKind::real_line:
      if (!alpha_is_even_integer())
        throw std::domain_error(
            "ExpansionSpec1D: whole-line domain needs even integer alpha");
      if (!(f_crit < 0.0))
        throw std::domain_error(
            "ExpansionSpec1D: whole-line domain needs f_crit < 0");
      break;
  }
}

double x_alpha(const ExpansionSpec1D& spec, double lambda, double k) {
  require_positive_args(lambda, k, "x_alpha");
  const double a0 = leading_coeff(spec, "x_alpha");
  return 4.0 / (a0 * lambda) * std::pow(k / 4.0, spec.alpha);
}

double bell_polynomial(int m, int j, std::span<const double> x) {
  if (m < 1 || j < 1 || j > m)
    throw std::domain_error("bell_polynomial: need 1 <= j <= m");
  const int len = m - j + 1;
  if (int(x.size()) < len)
    throw std::domain_error("bell_polynomial: argument list too short");

  double total = 0.0;
  std::vector<int> tuple(std::size_t(len), 0);
  // Enumerate occupation numbers j_i with sum j_i = j and sum i*j_i = m.
  auto rec = [&](auto&& self, int i, int count_left, int weight_left) -> void {
    if (i == len) {
      if (len * count_left != weight_left) return;
      tuple[std::size_t(len - 1)] = count_left;
      double coeff = detail::factorial(m);
      double monom = 1.0;
      for (int p = 1; p <= len; ++p) {
        const int jp = tuple[std::size_t(p - 1)];
        if (jp == 0) continue;
        coeff /= detail::factorial(jp) * std::pow(detail::factorial(p), jp);
        monom *= std::pow(x[std::size_t(p - 1)], jp);
      }
      total += coeff * monom;
      return;
    }
    const int max_ji = std::min(count_left, weight_left / i);
    for (int ji = 0; ji <= max_ji; ++ji) {
      tuple[std::size_t(i - 1)] = ji;
      self(self, i + 1, count_left - ji, weight_left - i * ji);
    }
  };
  rec(rec, 1, j, m);
  return total;
}

double d_coeff(const ExpansionSpec1D& spec, int m, int n_index, double nu) {
  if (m < 0 || m > n_index)
    throw std::domain_error("d_coeff: need 0 <= m <= n_index");
  if (m == 0) return 1.0;
  const double a0 = leading_coeff(spec, "d_coeff");

  // Arguments of the exponential Bell polynomials are the derivatives of the
  // normalized phase tail at 0, i.e. i! * a_i / a0.
  std::vector<double> derivs(std::size_t(m), 0.0);
  for (int i = 1; i <= m; ++i)
    derivs[std::size_t(i - 1)] = detail::factorial(i) * spec.a_coeff(i) / a0;

  double total = 0.0;
  for (int j = 1; j <= m; ++j) {
    const double bell = bell_polynomial(
        m, j, std::span<const double>(derivs).first(std::size_t(m - j + 1)));
    if (bell == 0.0) continue;
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    total += sign * specfun::gamma_ratio(nu, double(j)) * bell;
  }
  return total;
}

double d_coeff_oracle(const ExpansionSpec1D& spec, int m, int n_index,
                      double nu) {
  if (m < 0 || m > n_index)
    throw std::domain_error("d_coeff_oracle: need 0 <= m <= n_index");
  if (m == 0) return 1.0;
  const double a0 = leading_coeff(spec, "d_coeff_oracle");

  const int n = m;
  std::vector<double> v(std::size_t(n) + 1, 0.0);  // u - 1
  for (int i = 1; i <= n; ++i) v[std::size_t(i)] = spec.a_coeff(i) / a0;

  // log(1 + v): v has no constant term, so v^p starts at order p and the
  // truncated arithmetic is exact through order n.
  std::vector<double> lg(std::size_t(n) + 1, 0.0);
  std::vector<double> vp = v;
  for (int p = 1; p <= n; ++p) {
    const double sgn = (p % 2 == 1) ? 1.0 : -1.0;
    for (int i = 0; i <= n; ++i) lg[std::size_t(i)] += sgn * vp[std::size_t(i)] / p;
    if (p < n) vp = mul_trunc(vp, v, n);
  }

  // w = exp(-nu * log u)
  std::vector<double> g(std::size_t(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) g[std::size_t(i)] = -nu * lg[std::size_t(i)];
  std::vector<double> w(std::size_t(n) + 1, 0.0);
  w[0] = 1.0;
  std::vector<double> gp = g;
  for (int p = 1; p <= n; ++p) {
    const double inv_fact = 1.0 / detail::factorial(p);
    for (int i = 0; i <= n; ++i) w[std::size_t(i)] += gp[std::size_t(i)] * inv_fact;
    if (p < n) gp = mul_trunc(gp, g, n);
  }
  return detail::factorial(m) * w[std::size_t(m)];
}

SymbolValue symbol_Im(const ExpansionSpec1D& spec, int m, double lambda,
                      double k, const specfun::SeriesControl& ctl) {
  if (m < 0) throw std::domain_error("symbol_Im: m must be >= 0");
  require_positive_args(lambda, k, "symbol_Im");
  const double a0 = leading_coeff(spec, "symbol_Im");
  const double alpha = spec.alpha;
  const double beta = spec.beta;
  if (!(alpha >= 1.0)) throw std::domain_error("symbol_Im: alpha must be >= 1");
  if (alpha == 1.0 && !(k / (a0 * lambda) < 1.0))
    throw DivergenceError("symbol_Im: alpha = 1 needs k/(a0*lambda) < 1");

  const double sigma = 1.0 / alpha;
  const Complex z = Complex(0.0, k) * std::pow(a0 * lambda, -sigma);

  SymbolValue out;
  out.m = m;
  out.lambda = lambda;
  out.k = k;

  if (m == 0) {
    auto sv = specfun::fox_wright_1psi0(beta / alpha, sigma, z, ctl);
    const double pref = std::exp(-(beta / alpha) * std::log(a0 * lambda));
    out.value = pref * sv.value;
    out.series = sv;
    out.series.value = out.value;
    out.series.tail_estimate *= pref;
    return out;
  }

  const double pref =
      std::exp(-((m + beta) / alpha) * std::log(a0 * lambda)) /
      detail::factorial(m);
  std::vector<double> derivs(std::size_t(m), 0.0);
  for (int i = 1; i <= m; ++i)
    derivs[std::size_t(i - 1)] = detail::factorial(i) * spec.a_coeff(i);

  detail::KahanSum<Complex> acc;
  specfun::SeriesValue meta;
  meta.converged = true;
  double tail = 0.0;
  for (int j = 1; j <= m; ++j) {
    const double bell = bell_polynomial(
        m, j, std::span<const double>(derivs).first(std::size_t(m - j + 1)));
    if (bell == 0.0) continue;
    auto sv =
        specfun::fox_wright_1psi0((m + beta) / alpha + j, sigma, z, ctl);
    const double coeff = std::pow(-1.0 / a0, j) * bell;
    acc.add(coeff * sv.value);
    tail += std::abs(coeff) * sv.tail_estimate;
    meta.terms_used = std::max(meta.terms_used, sv.terms_used);
    meta.converged = meta.converged && sv.converged;
  }
  out.value = pref * acc.value();
  meta.value = out.value;
  meta.tail_estimate = pref * tail;
  out.series = meta;
  return out;
}

SymbolValue symbol_Im_two_sided(const ExpansionSpec1D& spec, int m,
                                double lambda, double k,
                                const specfun::SeriesControl& ctl) {
  if (m < 0) throw std::domain_error("symbol_Im_two_sided: m must be >= 0");
  require_positive_args(lambda, k, "symbol_Im_two_sided");
  if (spec.domain.kind == DomainKind::one_sided)
    throw std::domain_error("symbol_Im_two_sided: spec has a one-sided domain");
  if (!spec.alpha_is_even_integer())
    throw std::domain_error("symbol_Im_two_sided: alpha must be an even integer");
  if (!spec.beta_is_positive_integer())
    throw std::domain_error("symbol_Im_two_sided: beta must be a positive integer");
  const double a0 = leading_coeff(spec, "symbol_Im_two_sided");
  const double alpha = spec.alpha;
  const double beta = spec.beta;
  const bool beta_odd = std::llround(beta) % 2 == 1;

  // Surviving Fourier indices: even n for odd beta, odd n for even beta;
  // start at the smallest admissible n >= m.
  int n = m;
  if (beta_odd) {
    if (n % 2 != 0) ++n;
  } else {
    if (n % 2 != 1) ++n;
  }

  const double log_a0l = std::log(a0 * lambda);
  const double log_k = std::log(k);

  SymbolValue out;
  out.m = m;
  out.lambda = lambda;
  out.k = k;

  detail::KahanSum<Complex> acc;
  specfun::SeriesValue meta;
  int streak = 0;
  for (int count = 0; count < ctl.max_terms; ++count, n += 2) {
    const double nu = (n + beta) / alpha;
    const double d = d_coeff(spec, m, n, nu);
    const double ln_mag = specfun::ln_gamma(nu) - nu * log_a0l +
                          (n - m) * log_k - detail::ln_factorial(n - m) -
                          detail::ln_factorial(m);
    const Complex term =
        2.0 * std::exp(ln_mag) * d * detail::unit_imag_pow(n - m);
    acc.add(term);
    meta.terms_used = count + 1;
    meta.tail_estimate = std::abs(term);
    if (std::abs(term) <= ctl.rel_tol * std::abs(acc.value())) {
      if (++streak >= 3) {
        meta.converged = true;
        break;
      }
    } else {
      streak = 0;
    }
  }
  out.value = acc.value();
  meta.value = out.value;
  out.series = meta;
  return out;
}

Complex erdelyi_term(const ExpansionSpec1D& spec, int n, double lambda,
                     double k) {
  if (n < 0) throw std::domain_error("erdelyi_term: n must be >= 0");
  require_positive_args(lambda, k, "erdelyi_term");
  const double a0 = leading_coeff(spec, "erdelyi_term");
  const double nu = (n + spec.beta) / spec.alpha;
  const double scale =
      std::exp(specfun::ln_gamma(nu) - nu * std::log(a0 * lambda)) /
      spec.alpha;
  detail::KahanSum<Complex> sum;
  for (int m = 0; m <= n; ++m) {
    const double d = d_coeff(spec, m, n, nu);
    const double mag = std::pow(k, n - m) /
                       (detail::factorial(n - m) * detail::factorial(m));
    sum.add(detail::unit_imag_pow(n - m) * mag * d);
  }
  return scale * sum.value();
}

Correction12 corrections_AB(const ExpansionSpec1D& spec, double lambda,
                            double k) {
  if (std::abs(spec.alpha - 2.0) > 1e-12 || std::abs(spec.beta - 1.0) > 1e-12)
    throw std::domain_error("corrections_AB: requires alpha = 2 and beta = 1");
  if (spec.domain.kind == DomainKind::one_sided)
    throw std::domain_error("corrections_AB: requires a symmetric domain");
  const double a0 = leading_coeff(spec, "corrections_AB");
  const double x2 = x_alpha(spec, lambda, k);
  const double r1 = spec.a_coeff(1) / a0;
  const double r2 = spec.a_coeff(2) / a0;

  Correction12 c;
  c.x2 = x2;
  c.A = r1 * x2 * (2.0 * x2 - 3.0);
  c.B = -r2 * x2 * (4.0 * x2 * x2 - 12.0 * x2 + 3.0) -
        (r1 * r1 / 4.0) * x2 *
            (8.0 * x2 * x2 * x2 - 60.0 * x2 * x2 + 90.0 * x2 - 15.0);
  return c;
}

Complex asym_P_1d(const ExpansionSpec1D& spec, double s, double k, int order) {
  spec.validate();
  if (std::abs(spec.alpha - 2.0) > 1e-12 || std::abs(spec.beta - 1.0) > 1e-12)
    throw std::domain_error("asym_P_1d: requires alpha = 2 and beta = 1");
  if (spec.domain.kind == DomainKind::one_sided)
    throw std::domain_error("asym_P_1d: requires a symmetric domain");
  if (!(s >= 2.0)) throw std::domain_error("asym_P_1d: requires s >= 2");
  if (!(k > 0.0)) throw std::domain_error("asym_P_1d: requires k > 0");
  if (order < 0 || order > 2)
    throw std::domain_error("asym_P_1d: order must be 0, 1 or 2");

  const double a0 = spec.a[0];
  const double lambda = std::pow(k, s);
  const Correction12 c = corrections_AB(spec, lambda, k);

  Complex bracket{1.0, 0.0};
  if (order >= 1) bracket += Complex(0.0, c.A / k);
  if (order >= 2) bracket += Complex(c.B / (k * k), 0.0);

  const double envelope = std::exp(-lambda * spec.f_crit) *
                          std::pow(k, -s / 2.0) * std::sqrt(M_PI / a0) *
                          std::exp(-c.x2);
  return envelope * bracket;
}

double decay_order_Im(const ExpansionSpec1D& spec, int m, double s) {
  if (m < 0) throw std::domain_error("decay_order_Im: m must be >= 0");
  return -s * (m + spec.beta) / spec.alpha;
}

double erdelyi_term_order(const ExpansionSpec1D& spec, int n, double s) {
  if (n < 0) throw std::domain_error("erdelyi_term_order: n must be >= 0");
  return -s * (n + spec.beta) / spec.alpha + n;
}

Complex symbol_I0_alpha1_closed(const ExpansionSpec1D& spec, double lambda,
                                double k) {
  if (std::abs(spec.alpha - 1.0) > 1e-12)
    throw std::domain_error("symbol_I0_alpha1_closed: requires alpha = 1");
  require_positive_args(lambda, k, "symbol_I0_alpha1_closed");
  const double x1 = x_alpha(spec, lambda, k);
  const double gb = std::exp(specfun::ln_gamma(spec.beta));
  return gb * std::pow(x1 / k, spec.beta) *
         std::pow(Complex(1.0, -x1), -spec.beta);
}

Complex symbol_I0_alpha2_closed(const ExpansionSpec1D& spec, double lambda,
                                double k) {
  if (std::abs(spec.alpha - 2.0) > 1e-12)
    throw std::domain_error("symbol_I0_alpha2_closed: requires alpha = 2");
  if (!spec.beta_is_positive_integer())
    throw std::domain_error("symbol_I0_alpha2_closed: beta must be a positive integer");
  require_positive_args(lambda, k, "symbol_I0_alpha2_closed");
  const double x2 = x_alpha(spec, lambda, k);
  const long long b = std::llround(spec.beta);
  // 4 x2 / k^2 = 1/(a0*lambda)
  const double base = 4.0 * x2 / (k * k);
  if (b % 2 == 1) {
    const int l = int((b - 1) / 2);
    const double hyp = specfun::hyp1f1(l + 0.5, 0.5, -x2).value.real();
    return Complex(2.0 * std::pow(base, l + 0.5) *
                       specfun::gamma_half_integer(l) * hyp,
                   0.0);
  }
  const int l = int(b / 2);
  const double hyp = specfun::hyp1f1(l + 0.5, 1.5, -x2).value.real();
  return Complex(0.0, 2.0 * k * std::pow(base, l + 0.5) *
                          specfun::gamma_half_integer(l) * hyp);
}

Complex symbol_I0_alpha4_closed(const ExpansionSpec1D& spec, double lambda,
                                double k) {
  if (std::abs(spec.alpha - 4.0) > 1e-12 || std::abs(spec.beta - 1.0) > 1e-12)
    throw std::domain_error(
        "symbol_I0_alpha4_closed: requires alpha = 4 and beta = 1");
  require_positive_args(lambda, k, "symbol_I0_alpha4_closed");
  const double x4 = x_alpha(spec, lambda, k);
  const double g14 = std::exp(specfun::ln_gamma(0.25));
  const double g34 = std::exp(specfun::ln_gamma(0.75));
  const double even = specfun::hyp0f2(0.5, 0.75, x4 / 4.0).value.real();
  const double odd = specfun::hyp0f2(1.25, 1.5, x4 / 4.0).value.real();
  const double val = 2.0 * std::sqrt(2.0) * std::pow(x4, 0.25) / k *
                     (2.0 * g14 * even - 8.0 * std::sqrt(x4) * g34 * odd);
  return Complex(val, 0.0);
}

}  // namespace lfasym::series1d

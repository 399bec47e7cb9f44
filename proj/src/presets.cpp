#include "lfasym/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace lfasym::cli {

namespace {

using series1d::Domain;
using series1d::ExpansionSpec1D;

ExpansionSpec1D spec_1d(double alpha, double beta, std::vector<double> a,
                        double f_crit, Domain domain) {
  ExpansionSpec1D s;
  s.alpha = alpha;
  s.beta = beta;
  s.a = std::move(a);
  s.f_crit = f_crit;
  s.domain = domain;
  s.validate();
  return s;
}

multidim::HessianModel hessian_1d(double f0, double second_derivative) {
  multidim::HessianModel m;
  m.d = 1;
  m.f0 = f0;
  m.A = multidim::Matrix(1);
  m.A(0, 0) = second_derivative;
  return m;
}

double sq_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

Preset gauss1d_with_beta(double beta, std::string name) {
  Preset p;
  p.name = std::move(name);
  p.d = 1;
  p.evaluator = [](std::span<const double> x) { return x[0] * x[0]; };
  p.spec1d = spec_1d(2.0, beta, {1.0}, 0.0, Domain::two_sided(8.0, 8.0));
  p.hessian = hessian_1d(0.0, 2.0);
  p.box = oracle::DomainBox::interval(-8.0, 8.0);
  return p;
}

std::vector<Preset> build_catalog() {
  std::vector<Preset> cat;

  cat.push_back(gauss1d_with_beta(1.0, "gauss1d"));

  {
    Preset p;
    p.name = "quartic1d";
    p.d = 1;
    p.evaluator = [](std::span<const double> x) {
      const double x2 = x[0] * x[0];
      return x2 * x2;
    };
    p.spec1d = spec_1d(4.0, 1.0, {1.0}, 0.0, Domain::two_sided(2.0, 2.0));
    // degenerate critical point (f'' = 0): no Hessian model
    p.box = oracle::DomainBox::interval(-2.0, 2.0);
    cat.push_back(std::move(p));
  }

  {
    Preset p;
    p.name = "cubic-perturbed";
    p.d = 1;
    p.evaluator = [](std::span<const double> x) {
      const double t = x[0];
      return t * t * (1.0 + 0.3 * t + 0.2 * t * t);
    };
    p.spec1d =
        spec_1d(2.0, 1.0, {1.0, 0.3, 0.2}, 0.0, Domain::two_sided(2.0, 2.0));
    p.hessian = hessian_1d(0.0, 2.0);
    p.box = oracle::DomainBox::interval(-2.0, 2.0);
    cat.push_back(std::move(p));
  }

  {
    Preset p;
    p.name = "negative-gaussian";
    p.d = 1;
    p.evaluator = [](std::span<const double> x) {
      return -std::exp(-sq_norm(x));
    };
    // -e^{-x^2} + 1 = x^2 - x^4/2 + x^6/6 - x^8/24 about the origin
    p.spec1d = spec_1d(2.0, 1.0,
                       {1.0, 0.0, -1.0 / 2.0, 0.0, 1.0 / 6.0, 0.0, -1.0 / 24.0},
                       -1.0, Domain::real_line());
    p.hessian = hessian_1d(-1.0, 2.0);
    p.fourier_transform = [](std::span<const double> k) {
      return Complex(-std::sqrt(M_PI) * std::exp(-k[0] * k[0] / 4.0), 0.0);
    };
    p.l2_norm_sq = std::sqrt(M_PI / 2.0);
    p.box = oracle::DomainBox::interval(-6.0, 6.0);
    p.tail_sq_outside = [](double L) {
      return std::sqrt(M_PI / 2.0) * std::erfc(std::sqrt(2.0) * L);
    };
    cat.push_back(std::move(p));
  }

  {
    Preset p;
    p.name = "negative-gaussian-2d";
    p.d = 2;
    p.evaluator = [](std::span<const double> x) {
      return -std::exp(-sq_norm(x));
    };
    multidim::HessianModel m;
    m.d = 2;
    m.f0 = -1.0;
    m.A = multidim::Matrix(2);
    m.A(0, 0) = 2.0;
    m.A(1, 1) = 2.0;
    p.hessian = std::move(m);
    p.fourier_transform = [](std::span<const double> k) {
      return Complex(-M_PI * std::exp(-sq_norm(k) / 4.0), 0.0);
    };
    p.l2_norm_sq = M_PI / 2.0;
    p.box = oracle::DomainBox::cube(2, 5.0);
    p.tail_sq_outside = [](double L) {
      return (M_PI / 2.0) * std::exp(-2.0 * L * L);
    };
    cat.push_back(std::move(p));
  }

  {
    Preset p;
    p.name = "spd2d";
    p.d = 2;
    p.evaluator = [](std::span<const double> x) {
      return 0.5 * (2.0 * x[0] * x[0] + 2.0 * x[0] * x[1] + 3.0 * x[1] * x[1]);
    };
    multidim::HessianModel m;
    m.d = 2;
    m.f0 = 0.0;
    m.A = multidim::Matrix(2);
    m.A(0, 0) = 2.0;
    m.A(0, 1) = 1.0;
    m.A(1, 0) = 1.0;
    m.A(1, 1) = 3.0;
    p.hessian = std::move(m);
    p.box = oracle::DomainBox::cube(2, 6.0);
    cat.push_back(std::move(p));
  }

  cat.push_back(gauss1d_with_beta(2.0, "gauss1d-beta2"));
  cat.push_back(gauss1d_with_beta(3.0, "gauss1d-beta3"));

  return cat;
}

}  // namespace

const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog = build_catalog();
  return catalog;
}

const Preset& find_preset(const std::string& name) {
  for (const Preset& p : preset_catalog())
    if (p.name == name) return p;
  throw std::out_of_range("unknown preset '" + name + "'");
}

Preset make_polynomial_preset(series1d::ExpansionSpec1D spec,
                              std::string name) {
  spec.validate();
  Preset p;
  p.name = std::move(name);
  p.d = 1;
  const double alpha = spec.alpha;
  const double f_crit = spec.f_crit;
  const std::vector<double> coeffs = spec.a;
  p.evaluator = [alpha, f_crit, coeffs](std::span<const double> x) {
    double val = f_crit;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
      if (coeffs[j] != 0.0)
        val += coeffs[j] * std::pow(x[0], double(j) + alpha);
    return val;
  };
  switch (spec.domain.kind) {
    case series1d::DomainKind::one_sided:
      p.box = oracle::DomainBox::interval(0.0, spec.domain.b);
      break;
    case series1d::DomainKind::two_sided:
      p.box = oracle::DomainBox::interval(-spec.domain.b1, spec.domain.b2);
      break;
    case series1d::DomainKind::real_line:
      p.box = oracle::DomainBox::interval(-8.0, 8.0);
      break;
  }
  if (std::abs(alpha - 2.0) < 1e-12 && !spec.a.empty())
    p.hessian = hessian_1d(f_crit, 2.0 * spec.a[0]);
  p.spec1d = std::move(spec);
  return p;
}

}  // namespace lfasym::cli

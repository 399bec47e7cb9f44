#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lfasym/multidim.hpp"
#include "lfasym/oracle.hpp"
#include "lfasym/presets.hpp"

using namespace lfasym;
using namespace lfasym::oracle;

namespace {

double gauss1(double x) { return x * x; }

// closed-form transform of e^{-lambda x^2}
Complex gauss_transform(double lambda, double k) {
  return {std::sqrt(M_PI / lambda) * std::exp(-k * k / (4.0 * lambda)), 0.0};
}

double sq_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace

TEST_CASE("plain Gaussian integral at k = 0") {
  auto q = integrate_1d(gauss1, 1.0, 0.0, 1.0, -8.0, 8.0, 1e-10);
  REQUIRE(q.converged);
  CHECK(q.value.real() == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
  CHECK(std::abs(q.value.imag()) < 1e-12);
}

TEST_CASE("Gaussian transforms across the lambda-k grid") {
  for (double lambda : {1.0, 10.0, 100.0, 10000.0}) {
    for (double k : {0.0, 1.0, 5.0, 20.0}) {
      auto q = integrate_1d(gauss1, 1.0, k, lambda, -10.0, 10.0, 1e-10);
      const Complex exact = gauss_transform(lambda, k);
      // the k=20, lambda=1 corner sits near the oscillatory-cancellation
      // noise floor; measure against the envelope scale there
      const double floor = 1e-13 * std::sqrt(M_PI / lambda);
      CHECK(std::abs(q.value - exact) <=
            std::max(1e-9 * std::abs(exact), floor));
    }
  }
}

TEST_CASE("Gaussian transforms across the lambda-k grid, two dimensions") {
  auto f = [](std::span<const double> x) { return sq_norm(x); };
  for (double lambda : {1.0, 10.0, 100.0, 10000.0}) {
    for (double kmag : {0.0, 1.0, 5.0, 20.0}) {
      std::vector<double> k{kmag / std::sqrt(2.0), kmag / std::sqrt(2.0)};
      auto q = integrate_nd(f, k, lambda, DomainBox::cube(2, 10.0), 1e-8);
      const double exact = (M_PI / lambda) *
                           std::exp(-kmag * kmag / (4.0 * lambda));
      // oscillatory-cancellation corners (large k, small lambda) are judged
      // against the integrand scale pi/lambda
      const double floor = 1e-10 * (M_PI / lambda);
      CHECK(std::abs(q.value - Complex(exact, 0.0)) <=
            std::max(1e-7 * exact, floor));
    }
  }
}

TEST_CASE("integer amplitude powers carry the signed weight") {
  const double lambda = 30.0, k = 4.0;
  const double x2 = k * k / (4.0 * lambda);
  auto q = integrate_1d(gauss1, 2.0, k, lambda, -8.0, 8.0, 1e-11);
  REQUIRE(q.converged);
  const Complex exact(0.0, k * std::sqrt(M_PI) / (2.0 * std::pow(lambda, 1.5)) *
                               std::exp(-x2));
  CHECK(std::abs(q.value - exact) <= 1e-9 * std::abs(exact));
  CHECK_THROWS_AS(integrate_1d(gauss1, 0.5, 1.0, 1.0, -1.0, 1.0, 1e-8),
                  std::domain_error);
}

TEST_CASE("endpoint singularity handled by the power substitution") {
  // int_0^inf x^{-1/2} e^{-lambda x^2} dx = Gamma(1/4) / (2 lambda^{1/4})
  const double lambda = 2.0;
  auto q = integrate_1d(gauss1, 0.5, 0.0, lambda, 0.0, 12.0, 1e-10);
  REQUIRE(q.converged);
  const double exact = std::exp(std::lgamma(0.25)) / (2.0 * std::pow(lambda, 0.25));
  CHECK(q.value.real() == doctest::Approx(exact).epsilon(1e-9));

  // oscillatory variant still converges
  auto qo = integrate_1d(gauss1, 0.5, 3.0, lambda, 0.0, 12.0, 1e-9);
  CHECK(qo.converged);
}

TEST_CASE("doubling the initial panel density is inert once converged") {
  for (double k : {3.0, 17.0}) {
    const double tol = 1e-9;
    auto base = integrate_1d(gauss1, 1.0, k, 25.0, -8.0, 8.0, tol);
    REQUIRE(base.converged);
    const long long n0 = 2 * (long long)std::ceil(16.0 / (M_PI / std::max(k, 1.0)));
    auto dense =
        integrate_1d(gauss1, 1.0, k, 25.0, -8.0, 8.0, tol, kDefaultBudget, n0);
    REQUIRE(dense.converged);
    CHECK(std::abs(base.value - dense.value) <=
          2.0 * tol * std::abs(base.value));
  }
}

TEST_CASE("conjugate symmetry in k for real integrands") {
  auto f = [](double x) { return x * x * (1.0 + 0.3 * x + 0.2 * x * x); };
  for (double k : {1.5, 6.0}) {
    auto plus = integrate_1d(f, 1.0, k, 30.0, -2.0, 2.0, 1e-10);
    auto minus = integrate_1d(f, 1.0, -k, 30.0, -2.0, 2.0, 1e-10);
    REQUIRE(plus.converged);
    REQUIRE(minus.converged);
    CHECK(std::abs(minus.value - std::conj(plus.value)) <=
          1e-9 * std::abs(plus.value));
  }
}

TEST_CASE("budget exhaustion reports an unconverged result") {
  auto q = integrate_1d(gauss1, 1.0, 50.0, 2.0, -8.0, 8.0, 1e-13, 600);
  CHECK_FALSE(q.converged);
  CHECK(q.evaluations <= 600);
  CHECK(std::isfinite(q.value.real()));
}

TEST_CASE("iterated quadrature in two and three dimensions") {
  SUBCASE("product Gaussian at k = 0") {
    auto f = [](std::span<const double> x) { return 0.5 * sq_norm(x); };
    std::vector<double> k{0.0, 0.0};
    auto q = integrate_nd(f, k, 1.0, DomainBox::cube(2, 9.0), 1e-9);
    REQUIRE(q.converged);
    CHECK(q.value.real() == doctest::Approx(2.0 * M_PI).epsilon(1e-8));
  }
  SUBCASE("SPD quadratic against the closed multivariate transform") {
    auto f = [](std::span<const double> x) {
      return 0.5 * (2.0 * x[0] * x[0] + 2.0 * x[0] * x[1] + 3.0 * x[1] * x[1]);
    };
    const double lambda = 3.0;
    std::vector<double> k{2.0, -1.0};
    auto q = integrate_nd(f, k, lambda, DomainBox::cube(2, 7.0), 1e-8);
    REQUIRE(q.converged);
    const double det = 5.0;  // det [[2,1],[1,3]]
    // A^{-1} = [[3,-1],[-1,2]]/5
    const double quad = (3.0 * k[0] * k[0] - 2.0 * k[0] * k[1] +
                         2.0 * k[1] * k[1]) /
                        5.0;
    const double exact = std::sqrt(std::pow(2.0 * M_PI, 2) /
                                   (lambda * lambda * det)) *
                         std::exp(-quad / (2.0 * lambda));
    CHECK(q.value.real() == doctest::Approx(exact).epsilon(1e-7));
    CHECK(std::abs(q.value.imag()) <= 1e-7 * exact);
  }
  SUBCASE("three dimensions, isotropic Gaussian") {
    auto f = [](std::span<const double> x) { return sq_norm(x); };
    std::vector<double> k{1.0, 0.5, -0.5};
    const double lambda = 2.0;
    auto q = integrate_nd(f, k, lambda, DomainBox::cube(3, 5.0), 1e-6);
    REQUIRE(q.converged);
    const double exact = std::pow(M_PI / lambda, 1.5) *
                         std::exp(-sq_norm(k) / (4.0 * lambda));
    CHECK(q.value.real() == doctest::Approx(exact).epsilon(1e-5));
  }
  SUBCASE("dimension cap") {
    auto f = [](std::span<const double> x) { return sq_norm(x); };
    std::vector<double> k{0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(integrate_nd(f, k, 1.0, DomainBox::cube(4, 1.0), 1e-6),
                    std::domain_error);
  }
}

TEST_CASE("box-truncated Laplace integral approaches its asymptotics") {
  // f >= 0 vanishing only at the origin: the ratio to the Hessian formula
  // tends to 1 as lambda grows
  auto f = [](std::span<const double> x) {
    return 1.0 - std::exp(-sq_norm(x));
  };
  multidim::HessianModel m;
  m.d = 2;
  m.f0 = 0.0;
  m.A = multidim::Matrix(2);
  m.A(0, 0) = 2.0;
  m.A(1, 1) = 2.0;
  std::vector<double> k{1.0, 1.0};
  double prev_gap = 1.0;
  for (double lambda : {20.0, 80.0, 320.0}) {
    auto q = integrate_nd(f, k, lambda, DomainBox::cube(2, 3.0), 1e-9);
    REQUIRE(q.converged);
    const Complex asym = multidim::asym_J_nd(m, lambda, k);
    const double gap = std::abs(q.value / asym - 1.0);
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.02);
}

TEST_CASE("subtracted whole-line integral and its reconstruction") {
  const auto& p = cli::find_preset("negative-gaussian");
  SUBCASE("zero field gives exactly zero") {
    auto zero = [](std::span<const double>) { return 0.0; };
    auto ft = [](std::span<const double>) { return Complex(0.0, 0.0); };
    std::vector<double> k{2.0};
    auto res = integrate_pbar(zero, ft, k, 2.0, DomainBox::interval(-4.0, 4.0),
                              1e-10);
    CHECK(res.pbar.value == Complex(0.0, 0.0));
    CHECK(res.p_reconstructed == Complex(0.0, 0.0));
  }
  SUBCASE("reconstruction against the frozen reference value") {
    // P(6) for f = -e^{-x^2}, s = 2, summed at 40-digit precision
    const double reference = 992418075753627.7304918;
    std::vector<double> k{6.0};
    auto res = integrate_pbar(p.evaluator, p.fourier_transform, k, 2.0, p.box,
                              1e-9, kDefaultBudget, p.tail_sq_outside(6.0));
    REQUIRE(res.pbar.converged);
    CHECK(res.p_reconstructed.real() ==
          doctest::Approx(reference).epsilon(1e-8));
  }
  SUBCASE("two-dimensional reconstruction against the frozen reference") {
    // P(|k|=4) for f = -e^{-|x|^2} in d = 2, s = 2 (30-digit summation)
    const double reference = 1404163.008560738839194;
    const auto& p2 = cli::find_preset("negative-gaussian-2d");
    std::vector<double> k{4.0, 0.0};
    auto res = oracle::integrate_pbar(p2.evaluator, p2.fourier_transform, k,
                                      2.0, p2.box, 1e-8, kDefaultBudget,
                                      p2.tail_sq_outside(5.0));
    REQUIRE(res.pbar.converged);
    CHECK(res.p_reconstructed.real() ==
          doctest::Approx(reference).epsilon(1e-7));
  }
  SUBCASE("k = 0 is excluded") {
    std::vector<double> zero{0.0};
    CHECK_THROWS_AS(integrate_pbar(p.evaluator, p.fourier_transform, zero, 2.0,
                                   p.box, 1e-8),
                    std::domain_error);
  }
  SUBCASE("result is stable under box enlargement") {
    const double tol = 1e-8;
    std::vector<double> k{5.0};
    auto a = integrate_pbar(p.evaluator, p.fourier_transform, k, 2.0, p.box,
                            tol, kDefaultBudget, p.tail_sq_outside(6.0));
    auto b = integrate_pbar(p.evaluator, p.fourier_transform, k, 2.0,
                            p.box.scaled(1.5), tol, kDefaultBudget,
                            p.tail_sq_outside(9.0));
    REQUIRE(a.pbar.converged);
    REQUIRE(b.pbar.converged);
    CHECK(std::abs(a.p_reconstructed - b.p_reconstructed) <=
          5.0 * tol * std::abs(a.p_reconstructed));
  }
}

TEST_CASE("gap infima on reference profiles") {
  auto sq = [](std::span<const double> x) { return x[0] * x[0]; };
  auto quart = [](std::span<const double> x) {
    return x[0] * x[0] * x[0] * x[0];
  };
  auto neg_gauss = [](std::span<const double> x) {
    return -std::exp(-sq_norm(x));
  };

  SUBCASE("isolated-minimum gap") {
    // grids chosen so the excluded-ball boundary lands on a grid point
    CHECK(inf_rho(sq, 0.5, DomainBox::interval(-1.0, 1.0), 2001) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(inf_rho(quart, 1.0, DomainBox::interval(-2.0, 2.0), 2001) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(inf_rho(neg_gauss, 1.0, DomainBox::interval(-4.0, 4.0), 2001) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(inf_rho(sq, 0.1, DomainBox::interval(1.0, 2.0), 101),
                    std::domain_error);
  }
  SUBCASE("whole-line gap") {
    CHECK(inf_sigma(neg_gauss, 1.0, DomainBox::interval(-4.0, 4.0), 2001) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-10));
    CHECK_THROWS_AS(inf_sigma(sq, 1.0, DomainBox::interval(-2.0, 2.0), 101),
                    std::domain_error);
    // continuity at small radii
    const double s1 = inf_sigma(neg_gauss, 0.04, DomainBox::interval(-4.0, 4.0), 4001);
    const double s2 = inf_sigma(neg_gauss, 0.5, DomainBox::interval(-4.0, 4.0), 4001);
    CHECK(s1 > 0.0);
    CHECK(s1 < s2);
    CHECK(s1 < 0.01);
  }
  SUBCASE("two dimensions") {
    CHECK(inf_rho(neg_gauss, 1.0, DomainBox::cube(2, 3.0), 301) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-3));
  }
}

TEST_CASE("exterior tail bound") {
  CHECK(exterior_tail_bound(1.0, -1.0, 0.6, 0.0, 2.0) == 0.0);
  CHECK_THROWS_AS(exterior_tail_bound(1.0, -0.5, 0.6, 1.0, 2.0),
                  std::domain_error);
  // f0 + sigma < 0: the bound grows like e^{-K(f0+sigma)}
  const double C = std::sqrt(M_PI / 2.0);
  const double f0 = -1.0, sigma = 1.0 - std::exp(-1.0);
  const double b1 = exterior_tail_bound(C, f0, sigma, 4.0, 2.0);
  const double b2 = exterior_tail_bound(C, f0, sigma, 8.0, 2.0);
  CHECK(b1 > 0.0);
  const double expected_log_gap = -(f0 + sigma) * (64.0 - 16.0);
  CHECK(std::log(b2 / b1) == doctest::Approx(expected_log_gap).epsilon(1e-2));
}

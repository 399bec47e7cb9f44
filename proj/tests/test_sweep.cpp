#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "lfasym/presets.hpp"
#include "lfasym/sweep.hpp"

using namespace lfasym;
using namespace lfasym::cli;

TEST_CASE("preset catalog carries the advertised data") {
  const auto& cat = preset_catalog();
  CHECK(cat.size() >= 8);

  const auto& gauss = find_preset("gauss1d");
  REQUIRE(gauss.spec1d.has_value());
  CHECK(gauss.spec1d->alpha == 2.0);
  CHECK(gauss.spec1d->beta == 1.0);
  CHECK(gauss.spec1d->a == std::vector<double>{1.0});
  CHECK(gauss.f1(1.5) == doctest::Approx(2.25));

  const auto& ng = find_preset("negative-gaussian");
  REQUIRE(ng.fourier_transform);
  std::vector<double> k{2.0};
  CHECK(ng.fourier_transform(k).real() ==
        doctest::Approx(-std::sqrt(M_PI) * std::exp(-1.0)).epsilon(1e-14));
  CHECK(ng.l2_norm_sq.value() == doctest::Approx(std::sqrt(M_PI / 2.0)));
  CHECK(ng.spec1d->a[2] == doctest::Approx(-0.5));

  const auto& quartic = find_preset("quartic1d");
  REQUIRE(quartic.spec1d.has_value());
  CHECK(quartic.spec1d->alpha == 4.0);
  CHECK_NOTHROW(quartic.spec1d->validate());
  CHECK_FALSE(quartic.hessian.has_value());

  const auto& ng2 = find_preset("negative-gaussian-2d");
  CHECK(ng2.d == 2);
  CHECK(ng2.l2_norm_sq.value() == doctest::Approx(M_PI / 2.0));

  CHECK_THROWS_AS(find_preset("no-such-thing"), std::out_of_range);
}

TEST_CASE("custom polynomial presets evaluate their own coefficients") {
  series1d::ExpansionSpec1D spec;
  spec.alpha = 2.0;
  spec.beta = 1.0;
  spec.a = {1.0, 0.0, -0.1};
  spec.f_crit = 0.2;
  spec.domain = series1d::Domain::two_sided(1.0, 1.0);
  auto p = make_polynomial_preset(spec, "poly");
  CHECK(p.f1(0.5) ==
        doctest::Approx(0.2 + 0.25 - 0.1 * std::pow(0.5, 4.0)));
  CHECK(p.hessian->A(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("fit_decay_slope recovers exact power laws") {
  std::vector<double> xs{8.0, 16.0, 32.0, 64.0};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(std::pow(x, -3.0));
  CHECK(fit_decay_slope(xs, ys) == doctest::Approx(-3.0).epsilon(1e-12));

  std::vector<double> too_few{1.0, 2.0, 3.0};
  std::vector<double> ys3{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(fit_decay_slope(too_few, ys3), std::domain_error);

  std::vector<double> degenerate{2.0, 2.0, 2.0, 2.0};
  std::vector<double> ys4{1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(fit_decay_slope(degenerate, ys4), std::domain_error);
}

TEST_CASE("classical terms decay distinguishably slower than the symbols") {
  const auto& spec = *find_preset("cubic-perturbed").spec1d;
  const double s = 3.0;
  std::vector<double> grid{8.0, 16.0, 32.0, 64.0};
  std::vector<double> sym_mags, classical_mags;
  for (double k : grid) {
    const double lambda = std::pow(k, s);
    sym_mags.push_back(std::abs(series1d::symbol_Im(spec, 1, lambda, k).value));
    classical_mags.push_back(std::abs(series1d::erdelyi_term(spec, 1, lambda, k)));
  }
  const double sym_slope = fit_decay_slope(grid, sym_mags);
  const double classical_slope = fit_decay_slope(grid, classical_mags);
  CHECK(sym_slope == doctest::Approx(-3.0).epsilon(0.05));
  CHECK(classical_slope ==
        doctest::Approx(series1d::erdelyi_term_order(spec, 1, s)).epsilon(0.05));
  CHECK(classical_slope > sym_slope + 0.5);  // shallower by a full power
}

TEST_CASE("geometric grids hit both endpoints") {
  auto g = geometric_grid(4.0, 64.0, 5);
  CHECK(g.size() == 5);
  CHECK(g.front() == 4.0);
  CHECK(g.back() == 64.0);
  CHECK(g[2] == doctest::Approx(16.0).epsilon(1e-12));
  CHECK(geometric_grid(3.0, 3.0, 1) == std::vector<double>{3.0});
}

TEST_CASE("report emission: header, shape, round-trip, determinism") {
  SUBCASE("empty rows produce a header-only CSV") {
    std::ostringstream out;
    emit_report({}, ReportFormat::csv, out);
    CHECK(out.str() ==
          "k,s,re_asym,im_asym,re_oracle,im_oracle,abs_err,rel_err\n");
  }
  SUBCASE("fifty rows make a 51-line file") {
    std::vector<SweepRow> rows(50);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].k = double(i + 1);
    std::ostringstream out;
    emit_report(rows, ReportFormat::csv, out);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 51);
  }
  SUBCASE("JSON round-trips with bit-identical floats") {
    SweepRow r;
    r.k = 7.1234567890123456;
    r.s = 2.0;
    r.p_asym = Complex(1.0 / 3.0, -2.0 / 7.0);
    r.p_oracle = Complex(0.333333333333333314, -0.2857142857142857);
    r.abs_err = 1.2345678901234567e-11;
    r.rel_err = 3.7e-11;
    std::ostringstream out;
    emit_report(std::vector<SweepRow>{r}, ReportFormat::json, out);
    auto parsed = nlohmann::json::parse(out.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    const auto& row = parsed[0];
    CHECK(row.at("k").get<double>() == r.k);
    CHECK(row.at("p_asym").at("re").get<double>() == r.p_asym.real());
    CHECK(row.at("p_asym").at("im").get<double>() == r.p_asym.imag());
    CHECK(row.at("p_oracle").at("re").get<double>() == r.p_oracle.real());
    CHECK(row.at("abs_err").get<double>() == r.abs_err);
    CHECK(row.at("rel_err").get<double>() == r.rel_err);
    CHECK(row.at("oracle_converged").get<bool>() == true);
  }
  SUBCASE("unwritable paths surface with context") {
    CHECK_THROWS_WITH_AS(
        emit_report({}, ReportFormat::csv, "/nonexistent-dir/report.csv"),
        doctest::Contains("/nonexistent-dir/report.csv"), std::runtime_error);
  }
  SUBCASE("identical configurations produce byte-identical CSV") {
    SweepConfig cfg;
    cfg.s = 2.0;
    cfg.k_grid = {4.0, 8.0};
    cfg.tol = 1e-9;
    const auto& p = find_preset("gauss1d");
    std::ostringstream a, b;
    emit_report(run_sweep(p, cfg), ReportFormat::csv, a);
    emit_report(run_sweep(p, cfg), ReportFormat::csv, b);
    CHECK(a.str() == b.str());
    CHECK(a.str().size() > 60);
  }
}

TEST_CASE("gauss1d sweep is exact to oracle precision") {
  SweepConfig cfg;
  cfg.s = 2.0;
  cfg.k_grid = {4.0, 8.0, 16.0};
  cfg.tol = 1e-10;
  const auto rows = run_sweep(find_preset("gauss1d"), cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.oracle_converged);
    CHECK(r.rel_err <= 1e-8);
    const double lambda = std::pow(r.k, cfg.s);
    const double closed = std::sqrt(M_PI / lambda) *
                          std::exp(-r.k * r.k / (4.0 * lambda));
    CHECK(std::abs(r.p_asym - Complex(closed, 0.0)) <= 1e-12 * closed);
  }
}

TEST_CASE("second-order corrections beat the leading term on cubic preset") {
  SweepConfig base;
  base.s = 3.0;
  base.k_grid = {4.0, 6.0, 8.0};
  base.tol = 1e-10;
  auto order0 = base;
  order0.order = 0;
  auto order2 = base;
  order2.order = 2;
  const auto& p = find_preset("cubic-perturbed");
  const auto rows0 = run_sweep(p, order0);
  const auto rows2 = run_sweep(p, order2);
  for (std::size_t i = 0; i < rows0.size(); ++i) {
    CHECK(rows2[i].oracle_converged);
    CHECK(rows2[i].rel_err < rows0[i].rel_err);
  }
}

TEST_CASE("beta-weighted sweeps ride the odd-parity branch") {
  SweepConfig cfg;
  cfg.s = 2.0;
  cfg.k_grid = {4.0, 8.0};
  cfg.tol = 1e-9;
  const auto rows = run_sweep(find_preset("gauss1d-beta2"), cfg);
  for (const auto& r : rows) {
    CHECK(r.oracle_converged);
    CHECK(r.rel_err <= 1e-7);
    // pure odd weight: the transform is purely imaginary
    CHECK(std::abs(r.p_asym.real()) <= 1e-13 * std::abs(r.p_asym));
  }
}

TEST_CASE("whole-line preset sweeps through the subtracted integral") {
  SweepConfig cfg;
  cfg.s = 2.0;
  cfg.k_grid = {4.0, 8.0};
  cfg.tol = 1e-7;
  cfg.path = FormulaPath::multi_dim;
  const auto rows = run_sweep(find_preset("negative-gaussian"), cfg);
  for (const auto& r : rows) {
    CHECK(r.oracle_converged);
    CHECK(r.rel_err < 1e-2);
  }
}

TEST_CASE("one-sided custom presets sweep through the half-line symbols") {
  series1d::ExpansionSpec1D spec;
  spec.alpha = 2.0;
  spec.beta = 1.0;
  spec.a = {1.0, 0.2};
  spec.domain = series1d::Domain::one_sided(2.0);
  auto p = make_polynomial_preset(spec, "half");
  SweepConfig cfg;
  cfg.s = 3.0;
  cfg.k_grid = {4.0, 6.0};
  cfg.tol = 1e-10;
  const auto rows = run_sweep(p, cfg);
  for (const auto& r : rows) {
    CHECK(r.oracle_converged);
    CHECK(r.rel_err < 1e-3);  // order-2 truncation of the asymptotic series
  }
}

TEST_CASE("sweeps refuse presets that fail their own gap check") {
  // second minimum below f(0) inside the box: the isolated-minimum
  // condition does not hold
  series1d::ExpansionSpec1D spec;
  spec.alpha = 2.0;
  spec.beta = 1.0;
  spec.a = {1.0, -0.9};
  spec.domain = series1d::Domain::two_sided(2.0, 2.0);
  auto p = make_polynomial_preset(spec, "bad");
  SweepConfig cfg;
  cfg.k_grid = {4.0};
  CHECK_THROWS_AS(run_sweep(p, cfg), std::domain_error);
}

TEST_CASE("2d sweep with a diagonal direction") {
  SweepConfig cfg;
  cfg.s = 2.0;
  cfg.k_grid = {4.0};
  cfg.k_dir = {1.0, 1.0};
  cfg.tol = 1e-8;
  const auto rows = run_sweep(find_preset("spd2d"), cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].oracle_converged);
  CHECK(rows[0].rel_err <= 1e-6);
}

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lfasym/multidim.hpp"
#include "lfasym/oracle.hpp"
#include "lfasym/series1d.hpp"
#include "lfasym/types.hpp"

namespace lfasym::cli {

// A registered test function together with whatever analytic data it carries:
// the 1d expansion coefficients, the Hessian model, a closed-form Fourier
// transform and L2 data for the whole-line experiments, and a default
// integration box for the oracle.
struct Preset {
  std::string name;
  int d = 1;
  oracle::Field evaluator;
  std::optional<series1d::ExpansionSpec1D> spec1d;
  std::optional<multidim::HessianModel> hessian;
  oracle::FourierTransform fourier_transform;  // null unless whole-line
  std::optional<double> l2_norm_sq;            // int f^2 over all space
  oracle::DomainBox box;
  std::function<double(double)> tail_sq_outside;  // int_{|x|>L} f^2

  double f1(double x) const { return evaluator(std::span<const double>(&x, 1)); }
};

/// The built-in catalog.
const std::vector<Preset>& preset_catalog();

/// Lookup by name; throws std::out_of_range for unknown names.
const Preset& find_preset(const std::string& name);

// Ad-hoc preset from a 1d expansion spec whose f is exactly the listed
// polynomial f_crit + sum_j a_j x^{j+alpha} (alpha must make the powers
// integral for two-sided domains; validated by the spec).
Preset make_polynomial_preset(series1d::ExpansionSpec1D spec,
                              std::string name = "custom");

}  // namespace lfasym::cli

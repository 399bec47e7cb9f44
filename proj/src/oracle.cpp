#include "lfasym/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "lfasym/detail/accum.hpp"

namespace lfasym::oracle {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15
// abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

using Integrand = std::function<Complex(double)>;

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  Complex val{0.0, 0.0};
  double err = 0.0;
};

// Max-heap on the error estimate; ties broken by position so refinement
// order (and with it the whole computation) is deterministic.
struct PanelBelow {
  bool operator()(const Panel& a, const Panel& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.lo > b.lo;
  }
};

Panel gk15(const Integrand& g, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);

  const Complex fc = g(c);
  Complex resk = kWgk[7] * fc;
  Complex resg = kWg[3] * fc;
  for (int j = 0; j < 3; ++j) {
    const double dx = h * kXgk[2 * j + 1];
    const Complex fsum = g(c - dx) + g(c + dx);
    resg += kWg[j] * fsum;
    resk += kWgk[2 * j + 1] * fsum;
  }
  for (int j = 0; j < 4; ++j) {
    const double dx = h * kXgk[2 * j];
    const Complex fsum = g(c - dx) + g(c + dx);
    resk += kWgk[2 * j] * fsum;
  }

  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.val = resk * h;
  const Complex diff = (resk - resg) * h;
  p.err = std::abs(diff.real()) + std::abs(diff.imag());
  return p;
}

struct Outcome {
  Complex value{0.0, 0.0};
  double err = 0.0;
  bool converged = false;
};

// Globally adaptive bisection: refine the worst panel until the summed error
// estimate drops below rel_tol * |value| or the budget runs out. The final
// value is re-accumulated in position order so it does not depend on the
// refinement history.
// abs_floor lets a caller declare an absolute error level below which
// refinement is pointless (nested slices far below the peak slice);
// local_cap bounds the evaluations spent inside this one call.
Outcome adaptive_complex(const Integrand& g, double lo, double hi,
                         double rel_tol, double osc_scale, long long budget,
                         long long& evals, long long min_initial = 0,
                         double abs_floor = 0.0, long long local_cap = -1) {
  Outcome out;
  if (!(lo < hi)) throw std::domain_error("quadrature: need lo < hi");

  if (local_cap > 0) budget = std::min(budget, evals + local_cap);
  const double max_width = M_PI / std::max(osc_scale, 1.0);
  long long n0 = (long long)std::ceil((hi - lo) / max_width);
  n0 = std::clamp(std::max(n0, min_initial), 1LL, 1LL << 20);
  if (evals + 15 * n0 > budget) n0 = std::max(1LL, (budget - evals) / 15);

  std::priority_queue<Panel, std::vector<Panel>, PanelBelow> heap;
  std::vector<Panel> frozen;  // panels at machine-width, no further split
  Complex total{0.0, 0.0};
  double err_sum = 0.0;

  for (long long i = 0; i < n0; ++i) {
    const double a = lo + (hi - lo) * double(i) / double(n0);
    const double b = (i + 1 == n0) ? hi : lo + (hi - lo) * double(i + 1) / double(n0);
    Panel p = gk15(g, a, b);
    evals += 15;
    total += p.val;
    err_sum += p.err;
    heap.push(p);
  }

  while (err_sum > rel_tol * std::abs(total) && err_sum > abs_floor &&
         !heap.empty() && evals + 30 <= budget) {
    Panel worst = heap.top();
    if (worst.err == 0.0) break;
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(worst.lo < mid && mid < worst.hi)) {
      frozen.push_back(worst);
      continue;
    }
    Panel left = gk15(g, worst.lo, mid);
    Panel right = gk15(g, mid, worst.hi);
    evals += 30;
    total += left.val + right.val - worst.val;
    err_sum += left.err + right.err - worst.err;
    err_sum = std::max(err_sum, 0.0);
    heap.push(left);
    heap.push(right);
  }

  // deterministic fixed-order reduction
  std::vector<Panel> panels = std::move(frozen);
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  detail::KahanSum<Complex> vsum;
  detail::KahanSum<double> esum;
  for (const Panel& p : panels) {
    vsum.add(p.val);
    esum.add(p.err);
  }
  out.value = vsum.value();
  out.err = esum.value();
  const double mag = std::abs(out.value);
  out.converged = out.err <= abs_floor ||
                  (mag > 0.0 ? out.err <= rel_tol * mag : out.err == 0.0);
  return out;
}

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-9; }

Complex phase(double k, double x) {
  return Complex(std::cos(k * x), std::sin(k * x));
}

// Nested adaptive quadrature of core(x) * prod_j e^{i k_j x_j} over a box.
// Level j integrates axis j; deeper levels run at tolerances tightened by a
// factor of 10 per level. Inner slices are judged against the largest slice
// seen on their level, not against themselves: a slice whose own value is
// negligible may sit on the integrand's cancellation noise floor without
// spoiling the outer result.
struct NestedEngine {
  const Field* core = nullptr;  // scalar envelope evaluated at the full point
  std::span<const double> k;
  const DomainBox* box = nullptr;
  double tol = 0.0;
  long long budget = 0;
  long long evals = 0;
  double peak_mag[3] = {0.0, 0.0, 0.0};
  double worst_err[3] = {0.0, 0.0, 0.0};
  std::vector<double> point;

  double level_tol(int level) const {
    return 0.5 * tol * std::pow(0.1, level);
  }

  Outcome run() {
    point.assign(std::size_t(box->dim()), 0.0);
    return axis(0);
  }

  Outcome axis(int level) {
    const int d = box->dim();
    const double kj = k[std::size_t(level)];
    Integrand g;
    if (level == d - 1) {
      g = [this, kj, level](double x) -> Complex {
        point[std::size_t(level)] = x;
        return (*core)(point)*phase(kj, x);
      };
    } else {
      g = [this, kj, level](double x) -> Complex {
        point[std::size_t(level)] = x;
        Outcome inner = axis(level + 1);
        const std::size_t l = std::size_t(level) + 1;
        peak_mag[l] = std::max(peak_mag[l], std::abs(inner.value));
        worst_err[l] = std::max(worst_err[l], inner.err);
        return inner.value * phase(kj, x);
      };
    }
    // inner slices stop at the absolute level of the peak slice seen so
    // far and may not monopolize the budget
    const double floor =
        level > 0 ? level_tol(level) * peak_mag[std::size_t(level)] : 0.0;
    const long long cap = level > 0 ? 20'000 : -1;
    return adaptive_complex(g, box->lo[std::size_t(level)],
                            box->hi[std::size_t(level)], level_tol(level),
                            std::abs(kj), budget, evals, 0, floor, cap);
  }
};

QuadratureResult run_nested(const Field& core, std::span<const double> k,
                            const DomainBox& box, double tol,
                            long long budget) {
  box.validate();
  const int d = box.dim();
  if (d > 3)
    throw std::domain_error("quadrature: dimensions above 3 are not supported");
  if (int(k.size()) != d)
    throw std::domain_error("quadrature: k dimension mismatch");
  if (!(tol > 0.0)) throw std::domain_error("quadrature: tol must be > 0");

  NestedEngine eng;
  eng.core = &core;
  eng.k = k;
  eng.box = &box;
  eng.tol = tol;
  eng.budget = budget;
  Outcome res = eng.run();

  bool inner_ok = true;
  double inner_rel = 0.0;  // inner noise relative to the peak slice
  for (int l = 1; l < d; ++l) {
    if (eng.peak_mag[l] > 0.0) {
      const double ratio = eng.worst_err[l] / eng.peak_mag[l];
      inner_rel += ratio;
      inner_ok = inner_ok && ratio <= eng.level_tol(l);
    } else {
      inner_ok = inner_ok && eng.worst_err[l] == 0.0;
    }
  }

  QuadratureResult out;
  out.value = res.value;
  out.evaluations = eng.evals;
  out.abs_error_estimate = res.err + inner_rel * std::abs(res.value);
  const double mag = std::abs(out.value);
  out.converged = inner_ok &&
                  (mag > 0.0 ? out.abs_error_estimate <= tol * mag
                             : out.abs_error_estimate == 0.0);
  return out;
}

}  // namespace

void DomainBox::validate() const {
  if (lo.empty() || lo.size() != hi.size())
    throw std::domain_error("DomainBox: inconsistent bounds");
  for (std::size_t j = 0; j < lo.size(); ++j)
    if (!(lo[j] < hi[j]))
      throw std::domain_error("DomainBox: need lo < hi componentwise");
}

DomainBox DomainBox::interval(double lo, double hi) { return {{lo}, {hi}}; }

DomainBox DomainBox::cube(int d, double half_width) {
  DomainBox b;
  b.lo.assign(std::size_t(d), -half_width);
  b.hi.assign(std::size_t(d), half_width);
  return b;
}

DomainBox DomainBox::scaled(double factor) const {
  DomainBox b = *this;
  for (auto& v : b.lo) v *= factor;
  for (auto& v : b.hi) v *= factor;
  return b;
}

QuadratureResult integrate_1d(const std::function<double(double)>& f,
                              double beta, double k, double lambda, double lo,
                              double hi, double tol, long long budget,
                              long long min_initial_panels) {
  if (!(beta > 0.0)) throw std::domain_error("integrate_1d: beta must be > 0");
  if (!(lo < hi)) throw std::domain_error("integrate_1d: need lo < hi");
  if (!(tol > 0.0)) throw std::domain_error("integrate_1d: tol must be > 0");
  const bool beta_int = near_integer(beta);
  if (lo < 0.0 && !beta_int)
    throw std::domain_error(
        "integrate_1d: non-integer beta needs a non-negative interval");

  const long long ib = beta_int ? std::llround(beta) : 0;
  auto g = [&](double x) -> Complex {
    double env = std::exp(-lambda * f(x));
    if (beta != 1.0)
      env *= beta_int ? std::pow(x, double(ib - 1)) : std::pow(x, beta - 1.0);
    return env * phase(k, x);
  };

  const double osc = std::abs(k);
  long long evals = 0;
  Outcome head{{0.0, 0.0}, 0.0, true};
  Outcome rest{{0.0, 0.0}, 0.0, true};

  if (beta < 1.0 && lo == 0.0) {
    // substitution x = t^{1/beta} removes the x^{beta-1} singularity
    const double split = std::min(hi, M_PI / std::max(osc, 1.0));
    const double inv_beta = 1.0 / beta;
    auto gt = [&](double t) -> Complex {
      const double x = std::pow(t, inv_beta);
      const double env = std::exp(-lambda * f(x)) * inv_beta;
      return env * phase(k, x);
    };
    const double tmax = std::pow(split, beta);
    const double osc_t = osc * inv_beta * std::pow(split, 1.0 - beta);
    head = adaptive_complex(gt, 0.0, tmax, tol, osc_t, budget, evals,
                            min_initial_panels);
    if (split < hi)
      rest = adaptive_complex(g, split, hi, tol, osc, budget, evals,
                              min_initial_panels);
  } else {
    rest = adaptive_complex(g, lo, hi, tol, osc, budget, evals,
                            min_initial_panels);
  }

  QuadratureResult out;
  out.value = head.value + rest.value;
  out.abs_error_estimate = head.err + rest.err;
  out.evaluations = evals;
  const double mag = std::abs(out.value);
  out.converged = mag > 0.0 ? out.abs_error_estimate <= tol * mag
                            : out.abs_error_estimate == 0.0;
  return out;
}

QuadratureResult integrate_nd(const Field& f, std::span<const double> k,
                              double lambda, const DomainBox& box, double tol,
                              long long budget) {
  Field core = [&f, lambda](std::span<const double> x) {
    return std::exp(-lambda * f(x));
  };
  return run_nested(core, k, box, tol, budget);
}

PbarResult integrate_pbar(const Field& f, const FourierTransform& f_fourier,
                          std::span<const double> k, double s,
                          const DomainBox& box, double tol, long long budget,
                          double tail_sq_integral) {
  if (!f_fourier)
    throw std::domain_error(
        "integrate_pbar: closed-form Fourier transform is required");
  double k2 = 0.0;
  for (double v : k) k2 += v * v;
  const double kmag = std::sqrt(k2);
  if (!(kmag > 0.0))
    throw std::domain_error("integrate_pbar: k = 0 is excluded");
  const double big = std::pow(kmag, s);

  Field core = [&f, big](std::span<const double> x) {
    const double fx = f(x);
    return std::expm1(-big * fx) + big * fx;
  };

  PbarResult out;
  out.pbar = run_nested(core, k, box, tol, budget);
  out.pbar.abs_error_estimate += 0.5 * big * big * tail_sq_integral;
  const double mag = std::abs(out.pbar.value);
  out.pbar.converged =
      out.pbar.converged && (mag > 0.0 ? out.pbar.abs_error_estimate <= tol * mag
                                       : out.pbar.abs_error_estimate == 0.0);
  out.subtracted_transform = big * f_fourier(k);
  out.p_reconstructed = out.pbar.value - out.subtracted_transform;
  return out;
}

namespace {

int default_grid(int d) { return d == 1 ? 2001 : (d == 2 ? 301 : 61); }

template <class Visit>
void for_each_grid_point(const DomainBox& box, int n, Visit&& visit) {
  const int d = box.dim();
  std::vector<int> idx(std::size_t(d), 0);
  std::vector<double> x(std::size_t(d), 0.0);
  while (true) {
    bool boundary = false;
    for (int j = 0; j < d; ++j) {
      const int i = idx[std::size_t(j)];
      x[std::size_t(j)] =
          box.lo[std::size_t(j)] +
          (box.hi[std::size_t(j)] - box.lo[std::size_t(j)]) * double(i) /
              double(n - 1);
      boundary = boundary || i == 0 || i == n - 1;
    }
    visit(std::span<const double>(x), boundary);
    int j = 0;
    for (; j < d; ++j) {
      if (++idx[std::size_t(j)] < n) break;
      idx[std::size_t(j)] = 0;
    }
    if (j == d) break;
  }
}

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double inf_rho(const Field& f, double eps, const DomainBox& box, int grid_n) {
  box.validate();
  const int d = box.dim();
  if (d > 3) throw std::domain_error("inf_rho: dimensions above 3 unsupported");
  if (!(eps > 0.0)) throw std::domain_error("inf_rho: eps must be > 0");
  // the critical point may sit on the box boundary (one-sided domains)
  for (int j = 0; j < d; ++j)
    if (!(box.lo[std::size_t(j)] <= 0.0 && box.hi[std::size_t(j)] >= 0.0))
      throw std::domain_error("inf_rho: origin must lie inside the box");

  const int n = grid_n > 0 ? grid_n : default_grid(d);
  const std::vector<double> origin(std::size_t(d), 0.0);
  const double f0 = f(origin);

  double best = std::numeric_limits<double>::infinity();
  for_each_grid_point(box, n, [&](std::span<const double> x, bool) {
    if (norm2(x) < eps) return;
    best = std::min(best, f(x) - f0);
  });
  if (!std::isfinite(best))
    throw std::domain_error("inf_rho: eps-ball covers the whole box");
  return best;
}

double inf_sigma(const Field& f, double eps, const DomainBox& box,
                 int grid_n) {
  box.validate();
  const int d = box.dim();
  if (d > 3) throw std::domain_error("inf_sigma: dimensions above 3 unsupported");
  if (!(eps > 0.0)) throw std::domain_error("inf_sigma: eps must be > 0");

  const int n = grid_n > 0 ? grid_n : default_grid(d);
  const std::vector<double> origin(std::size_t(d), 0.0);
  const double f0 = f(origin);
  if (!(f0 < 0.0))
    throw std::domain_error("inf_sigma: requires f(0) < 0");

  double interior = std::numeric_limits<double>::infinity();
  double boundary_max = 0.0;
  for_each_grid_point(box, n, [&](std::span<const double> x, bool boundary) {
    const double fx = f(x);
    if (boundary) boundary_max = std::max(boundary_max, std::abs(fx));
    if (norm2(x) < eps) return;
    interior = std::min(interior, std::abs(f0) - std::abs(fx));
  });
  if (!std::isfinite(interior))
    throw std::domain_error("inf_sigma: eps-ball covers the whole box");
  // past the box, |f| is covered by its boundary-shell maximum (decaying
  // presets), so the exterior infimum is at least |f0| - boundary_max
  return std::min(interior, std::abs(f0) - boundary_max);
}

double exterior_tail_bound(double C, double f0, double sigma, double k_mag,
                           double s) {
  if (C < 0.0)
    throw std::domain_error("exterior_tail_bound: C must be >= 0");
  if (!(std::abs(f0) > sigma))
    throw std::domain_error("exterior_tail_bound: requires |f0| > sigma");
  const double big = std::pow(k_mag, s);
  const double u = big * (f0 + sigma);
  const double gap = std::abs(f0) - sigma;
  return C / (gap * gap) * (std::expm1(-u) + u);
}

}  // namespace lfasym::oracle

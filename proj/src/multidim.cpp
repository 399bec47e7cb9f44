#include "lfasym/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lfasym/detail/accum.hpp"

namespace lfasym::multidim {

namespace {

// Determinant by LU with partial pivoting; only used on small matrices.
double determinant(const Matrix& m) {
  const int n = m.dim();
  Matrix a = m;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double factor = a(r, col) / a(col, col);
      for (int c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
    }
  }
  return det;
}

std::vector<double> rotated_coords(const Matrix& H0,
                                   std::span<const double> k) {
  const int n = H0.dim();
  if (int(k.size()) != n)
    throw std::domain_error("multidim: vector dimension mismatch");
  std::vector<double> y(std::size_t(n), 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += H0(i, j) * k[std::size_t(i)];
    y[std::size_t(j)] = s;  // (H0^T k)_j
  }
  return y;
}

void require_positive_definite(const EigenDecomp& dec, const char* who) {
  if (!check_positive_definite(dec))
    throw std::runtime_error(std::string(who) +
                             ": eigenvalue spectrum is degenerate or indefinite");
}

}  // namespace

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : v_) s += v * v;
  return std::sqrt(s);
}

bool Matrix::is_symmetric(double rel_tol) const {
  const double scale = frobenius_norm();
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale)
        return false;
  return true;
}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_row_major(int n, std::span<const double> values) {
  if (int(values.size()) != n * n)
    throw std::domain_error("Matrix::from_row_major: size mismatch");
  Matrix m(n);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

void HessianModel::validate() const {
  if (d < 1 || A.dim() != d)
    throw std::domain_error("HessianModel: dimension mismatch");
  if (!A.is_symmetric())
    throw std::domain_error("HessianModel: Hessian must be symmetric");
}

int MultiIndexTerm::total_order() const {
  return std::accumulate(n_vec.begin(), n_vec.end(), 0);
}

EigenDecomp jacobi_eigen(const Matrix& A) {
  const int n = A.dim();
  if (n < 1) throw std::domain_error("jacobi_eigen: empty matrix");
  if (!A.is_symmetric())
    throw std::domain_error("jacobi_eigen: matrix must be symmetric");

  Matrix s = A;
  Matrix v = Matrix::identity(n);
  const double scale = A.frobenius_norm();
  const double target = 1e-13 * scale;

  auto off_diag_norm = [&] {
    double t = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) t += 2.0 * s(i, j) * s(i, j);
    return std::sqrt(t);
  };

  bool done = off_diag_norm() <= target;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (int i = 0; i < n; ++i) {
          const double sip = s(i, p), siq = s(i, q);
          s(i, p) = c * sip - sn * siq;
          s(i, q) = sn * sip + c * siq;
        }
        for (int i = 0; i < n; ++i) {
          const double spi = s(p, i), sqi = s(q, i);
          s(p, i) = c * spi - sn * sqi;
          s(q, i) = sn * spi + c * sqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - sn * viq;
          v(i, q) = sn * vip + c * viq;
        }
      }
    }
    done = off_diag_norm() <= target;
  }
  if (!done)
    throw std::runtime_error("jacobi_eigen: no convergence within 100 sweeps");

  EigenDecomp dec;
  dec.mu.resize(std::size_t(n));
  for (int i = 0; i < n; ++i) dec.mu[std::size_t(i)] = s(i, i);

  std::vector<int> order(std::size_t(n), 0);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return dec.mu[std::size_t(a)] < dec.mu[std::size_t(b)];
  });

  Matrix h0(n);
  std::vector<double> mu_sorted(std::size_t(n), 0.0);
  for (int jnew = 0; jnew < n; ++jnew) {
    const int jold = order[std::size_t(jnew)];
    mu_sorted[std::size_t(jnew)] = dec.mu[std::size_t(jold)];
    for (int i = 0; i < n; ++i) h0(i, jnew) = v(i, jold);
  }
  dec.mu = std::move(mu_sorted);

  if (determinant(h0) < 0.0)
    for (int i = 0; i < n; ++i) h0(i, n - 1) = -h0(i, n - 1);
  dec.H0 = std::move(h0);
  return dec;
}

bool check_positive_definite(const EigenDecomp& dec) {
  if (dec.mu.empty()) return false;
  const double mn = *std::min_element(dec.mu.begin(), dec.mu.end());
  const double mx = *std::max_element(dec.mu.begin(), dec.mu.end());
  return mn > 1e-12 * mx;
}

double quad_form_inv(const EigenDecomp& dec, std::span<const double> k) {
  require_positive_definite(dec, "quad_form_inv");
  const auto y = rotated_coords(dec.H0, k);
  double s = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) s += y[j] * y[j] / dec.mu[j];
  return s;
}

double det_from_eigen(const EigenDecomp& dec) {
  double d = 1.0;
  for (double m : dec.mu) d *= m;
  return d;
}

double cn_large_k(const EigenDecomp& dec, std::span<const double> k, int n) {
  if (n < 0) throw std::domain_error("cn_large_k: n must be >= 0");
  const int d = dec.H0.dim();
  const double pref =
      std::sqrt(std::pow(2.0 * M_PI, d) / det_from_eigen(dec));
  const double q = quad_form_inv(dec, k);
  return pref * std::pow(-0.5, n) * std::pow(q, n) / detail::factorial(n);
}

std::vector<MultiIndexTerm> multi_index_terms(const EigenDecomp& dec,
                                              std::span<const double> k,
                                              int n) {
  if (n < 0) throw std::domain_error("multi_index_terms: n must be >= 0");
  require_positive_definite(dec, "multi_index_terms");
  const int d = dec.H0.dim();
  const auto y = rotated_coords(dec.H0, k);

  std::vector<MultiIndexTerm> terms;
  std::vector<int> n_vec(std::size_t(d), 0);
  auto rec = [&](auto&& self, int j, int left) -> void {
    if (j == d - 1) {
      n_vec[std::size_t(j)] = left;
      double w = 1.0;
      for (int i = 0; i < d; ++i) {
        const int ni = n_vec[std::size_t(i)];
        w *= std::pow(y[std::size_t(i)] * y[std::size_t(i)] / dec.mu[std::size_t(i)], ni) /
             detail::factorial(ni);
      }
      terms.push_back({n_vec, w});
      return;
    }
    for (int ni = 0; ni <= left; ++ni) {
      n_vec[std::size_t(j)] = ni;
      self(self, j + 1, left - ni);
    }
  };
  rec(rec, 0, n);
  return terms;
}

double cn_large_k_enumerated(const EigenDecomp& dec, std::span<const double> k,
                             int n) {
  const int d = dec.H0.dim();
  const double pref =
      std::sqrt(std::pow(2.0 * M_PI, d) / det_from_eigen(dec));
  detail::KahanSum<double> sum;
  for (const auto& t : multi_index_terms(dec, k, n)) sum.add(t.weight);
  return pref * std::pow(-0.5, n) * sum.value();
}

Complex asym_J_nd(const HessianModel& model, double lambda,
                  std::span<const double> k) {
  model.validate();
  if (!(lambda > 0.0)) throw std::domain_error("asym_J_nd: lambda must be > 0");
  const auto dec = jacobi_eigen(model.A);
  require_positive_definite(dec, "asym_J_nd");
  const double q = quad_form_inv(dec, k);
  const double det = det_from_eigen(dec);
  const double val = std::exp(-lambda * model.f0) *
                     std::sqrt(std::pow(2.0 * M_PI / lambda, model.d) / det) *
                     std::exp(-q / (2.0 * lambda));
  return Complex(val, 0.0);
}

Complex asym_P_nd(const HessianModel& model, double s,
                  std::span<const double> k) {
  if (!(s >= 2.0)) throw std::domain_error("asym_P_nd: requires s >= 2");
  double k2 = 0.0;
  for (double v : k) k2 += v * v;
  const double kmag = std::sqrt(k2);
  if (!(kmag > 0.0)) throw std::domain_error("asym_P_nd: requires |k| > 0");
  return asym_J_nd(model, std::pow(kmag, s), k);
}

HessianFdResult hessian_fd(const ScalarField& f, int d, double h) {
  if (d < 1) throw std::domain_error("hessian_fd: d must be >= 1");
  if (!(h > 0.0)) throw std::domain_error("hessian_fd: h must be > 0");

  std::vector<double> x(std::size_t(d), 0.0);
  const double f0 = f(x);

  auto eval = [&](int i, double di, int j, double dj) {
    std::vector<double> p(std::size_t(d), 0.0);
    p[std::size_t(i)] += di;
    if (j >= 0) p[std::size_t(j)] += dj;
    return f(p);
  };

  Matrix m(d);
  for (int i = 0; i < d; ++i) {
    m(i, i) = (eval(i, h, -1, 0.0) - 2.0 * f0 + eval(i, -h, -1, 0.0)) / (h * h);
    for (int j = i + 1; j < d; ++j) {
      const double v = (eval(i, h, j, h) - eval(i, h, j, -h) -
                        eval(i, -h, j, h) + eval(i, -h, j, -h)) /
                       (4.0 * h * h);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  // symmetrize (already symmetric by construction, kept for roundoff)
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m(i, j) = v;
      m(j, i) = v;
    }

  std::vector<double> grad(std::size_t(d), 0.0);
  double grad_norm2 = 0.0;
  for (int i = 0; i < d; ++i) {
    grad[std::size_t(i)] = (eval(i, h, -1, 0.0) - eval(i, -h, -1, 0.0)) / (2.0 * h);
    grad_norm2 += grad[std::size_t(i)] * grad[std::size_t(i)];
  }
  if (std::sqrt(grad_norm2) > 1e-6 * m.frobenius_norm() * h)
    throw std::domain_error("hessian_fd: origin is not a critical point");

  HessianFdResult out;
  out.model.d = d;
  out.model.f0 = f0;
  out.model.A = std::move(m);
  out.gradient = std::move(grad);
  return out;
}

}  // namespace lfasym::multidim

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lfasym/types.hpp"

namespace lfasym::multidim {

// Dense square matrix, row-major. Sized for desk-scale problems (d <= 16).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n) : n_(n), v_(std::size_t(n) * std::size_t(n), 0.0) {}

  int dim() const { return n_; }
  double& operator()(int i, int j) { return v_[idx(i, j)]; }
  double operator()(int i, int j) const { return v_[idx(i, j)]; }
  std::span<const double> data() const { return v_; }
  std::span<double> data() { return v_; }

  double frobenius_norm() const;
  bool is_symmetric(double rel_tol = 1e-12) const;

  static Matrix identity(int n);
  static Matrix from_row_major(int n, std::span<const double> values);

 private:
  std::size_t idx(int i, int j) const {
    return std::size_t(i) * std::size_t(n_) + std::size_t(j);
  }
  int n_ = 0;
  std::vector<double> v_;
};

// d-dimensional problem data: f at the critical point (fixed at the origin)
// and the symmetric Hessian there.
struct HessianModel {
  int d = 1;
  double f0 = 0.0;
  Matrix A;

  void validate() const;  // symmetry within 1e-12 * ||A||
};

// Eigenvalues mu_j and the diagonalizing orthogonal matrix H0 with
// H0^T A H0 = diag(mu) and det H0 = +1.
struct EigenDecomp {
  std::vector<double> mu;
  Matrix H0;
};

// One term of the enumerated multi-index sum behind c_n(k).
struct MultiIndexTerm {
  std::vector<int> n_vec;
  double weight = 0.0;

  int total_order() const;
};

// Cyclic Jacobi sweeps until the off-diagonal Frobenius norm drops below
// 1e-13 * ||A||; eigenvalues sorted ascending, eigenvector matrix
// orientation-corrected to det = +1.
EigenDecomp jacobi_eigen(const Matrix& A);

/// True iff min mu_j > 1e-12 * max mu_j.
bool check_positive_definite(const EigenDecomp& dec);

/// k^T A^{-1} k computed as sum_j (H0^T k)_j^2 / mu_j.
double quad_form_inv(const EigenDecomp& dec, std::span<const double> k);

/// det A as the product of the eigenvalues.
double det_from_eigen(const EigenDecomp& dec);

// Large-|k| coefficient c_n(k) in closed form:
//   sqrt((2 pi)^d / det A) * (-1/2)^n * (k^T A^{-1} k)^n / n!.
double cn_large_k(const EigenDecomp& dec, std::span<const double> k, int n);

// The same coefficient by direct enumeration of all multi-indices with
// |n_vec| = n; verifies the multinomial identity behind the closed form.
std::vector<MultiIndexTerm> multi_index_terms(const EigenDecomp& dec,
                                              std::span<const double> k, int n);
double cn_large_k_enumerated(const EigenDecomp& dec, std::span<const double> k,
                             int n);

// Leading-order asymptotics of int e^{-lambda f} e^{ikx} dx:
//   e^{-lambda f0} * sqrt((2 pi)^d / (lambda^d det A)) *
//   exp(-k^T A^{-1} k / (2 lambda)).
// Exact for quadratic f at every lambda.
Complex asym_J_nd(const HessianModel& model, double lambda,
                  std::span<const double> k);

/// asym_J_nd at lambda = |k|^s; throws for k = 0.
Complex asym_P_nd(const HessianModel& model, double s,
                  std::span<const double> k);

using ScalarField = std::function<double(std::span<const double>)>;

struct HessianFdResult {
  HessianModel model;
  std::vector<double> gradient;
};

// Central-difference Hessian at the origin, symmetrized as (M + M^T)/2.
// Throws if the gradient check ||grad|| > 1e-6 * ||A|| * h fails (the origin
// must be a critical point).
HessianFdResult hessian_fd(const ScalarField& f, int d, double h = 5e-4);

}  // namespace lfasym::multidim

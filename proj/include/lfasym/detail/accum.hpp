#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "lfasym/types.hpp"

namespace lfasym::detail {

// Compensated (Kahan) accumulator. Complex addition is componentwise, so one
// complex compensation term covers both parts.
template <class T>
class KahanSum {
 public:
  void add(const T& term) {
    const T y = term - comp_;
    const T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  const T& value() const { return sum_; }

 private:
  T sum_{};
  T comp_{};
};

inline double factorial(int n) {
  static const auto table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * double(i);
    return t;
  }();
  return table[static_cast<std::size_t>(n)];
}

inline double ln_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// i^p for integer p, exact.
inline Complex unit_imag_pow(long long p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace lfasym::detail

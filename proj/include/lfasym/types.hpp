#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace lfasym {

// All integral values and series symbols are complex; double precision
// throughout.
using Complex = std::complex<double>;

// Thrown when a series is evaluated outside its convergence region (e.g. the
// ratio-test guard of the Fox-Wright kernel fires). Distinct from plain
// std::domain_error so callers can tell bad arguments from divergent regimes.
class DivergenceError : public std::domain_error {
 public:
  explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace lfasym

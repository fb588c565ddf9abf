#include "limits.hpp"

#include <cmath>

namespace spn::limits {

long slp_length_ceiling(int n, int q) {
  return static_cast<long>(kSlpLenC * double(n) * n * std::log2(double(q)));
}

}  // namespace spn::limits

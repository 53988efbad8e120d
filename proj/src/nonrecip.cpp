#include "magnomech/nonrecip.hpp"

#include <cmath>

#include "magnomech/errors.hpp"

namespace magnomech {

double bipartite_nonlinear_index(const NonreciprocityPair& pair) {
  if (!std::isfinite(pair.value_plus) || !std::isfinite(pair.value_minus))
    return std::numeric_limits<double>::quiet_NaN();
  return std::abs(pair.value_plus - pair.value_minus);
}

bool nonreciprocal(const NonreciprocityPair& pair, double threshold) {
  double index = bipartite_nonlinear_index(pair);
  return std::isfinite(index) && index > threshold;
}

double bidirectional_contrast_ratio(const NonreciprocityPair& pair) {
  const double p = pair.value_plus, m = pair.value_minus;
  if (!std::isfinite(p) || !std::isfinite(m))
    return std::numeric_limits<double>::quiet_NaN();
  if (p < 0 || m < 0)
    throw DomainError("bidirectional_contrast_ratio: negative input value");
  if (p == 0 && m == 0) return 0.0;
  return std::abs(p - m) / (p + m);
}

}  // namespace magnomech

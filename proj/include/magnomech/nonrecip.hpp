#pragma once

#include <limits>
#include <string>

namespace magnomech {

// One entanglement measure evaluated on both Kerr branches (positive and
// negative Kerr shift). NaN marks a branch without a stable steady state.
struct NonreciprocityPair {
  double value_plus = std::numeric_limits<double>::quiet_NaN();
  double value_minus = std::numeric_limits<double>::quiet_NaN();
  std::string measure_id;   // e.g. "E_c1c2", "R_c1mb"
  std::string parameters;   // free-form echo of the evaluation point
};

// |value_plus - value_minus|; NaN on either side propagates.
double bipartite_nonlinear_index(const NonreciprocityPair& pair);

// Verdict on bipartite nonreciprocity: index above threshold. False when
// either branch carries the unstable sentinel.
bool nonreciprocal(const NonreciprocityPair& pair, double threshold = 1e-6);

// |plus - minus| / (plus + minus) in [0, 1]; 0 when both are zero, 1 when
// exactly one side vanishes. Throws DomainError on negative inputs; NaN
// propagates.
double bidirectional_contrast_ratio(const NonreciprocityPair& pair);

}  // namespace magnomech

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "magnomech/errors.hpp"
#include "magnomech/nonrecip.hpp"

using namespace magnomech;

namespace {
const double nan_v = std::numeric_limits<double>::quiet_NaN();

NonreciprocityPair pair_of(double plus, double minus) {
  NonreciprocityPair p;
  p.value_plus = plus;
  p.value_minus = minus;
  p.measure_id = "E_c1c2";
  return p;
}
}  // namespace

TEST_CASE("difference index arithmetic") {
  CHECK(bipartite_nonlinear_index(pair_of(0.20, 0.05)) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(bipartite_nonlinear_index(pair_of(0.05, 0.20)) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(bipartite_nonlinear_index(pair_of(0.3, 0.3)) == 0.0);
  CHECK(bipartite_nonlinear_index(pair_of(0.0, 0.0)) == 0.0);
}

TEST_CASE("difference index propagates the unstable sentinel") {
  CHECK(std::isnan(bipartite_nonlinear_index(pair_of(nan_v, 0.1))));
  CHECK(std::isnan(bipartite_nonlinear_index(pair_of(0.1, nan_v))));
  CHECK(std::isnan(bipartite_nonlinear_index(pair_of(nan_v, nan_v))));
}

TEST_CASE("nonreciprocity verdict") {
  CHECK(nonreciprocal(pair_of(0.20, 0.05)));
  CHECK_FALSE(nonreciprocal(pair_of(0.3, 0.3)));
  CHECK_FALSE(nonreciprocal(pair_of(0.2, 0.2 + 1e-9)));   // below default threshold
  CHECK(nonreciprocal(pair_of(0.2, 0.2 + 1e-9), 1e-10));  // explicit threshold
  CHECK_FALSE(nonreciprocal(pair_of(nan_v, 0.1)));
  CHECK_FALSE(nonreciprocal(pair_of(0.1, nan_v)));
}

TEST_CASE("contrast ratio arithmetic") {
  CHECK(bidirectional_contrast_ratio(pair_of(0.1, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bidirectional_contrast_ratio(pair_of(0.0, 0.1)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bidirectional_contrast_ratio(pair_of(0.25, 0.25)) == 0.0);
  CHECK(bidirectional_contrast_ratio(pair_of(0.3, 0.1)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(bidirectional_contrast_ratio(pair_of(0.0, 0.0)) == 0.0);  // defined limit
}

TEST_CASE("contrast ratio rejects negative measures, propagates sentinels") {
  CHECK_THROWS_AS(bidirectional_contrast_ratio(pair_of(-0.1, 0.2)), DomainError);
  CHECK_THROWS_AS(bidirectional_contrast_ratio(pair_of(0.2, -1e-12)), DomainError);
  CHECK(std::isnan(bidirectional_contrast_ratio(pair_of(nan_v, 0.1))));
  CHECK(std::isnan(bidirectional_contrast_ratio(pair_of(0.1, nan_v))));
}

TEST_CASE("symmetry, scale behavior and range on random pairs") {
  std::mt19937 rng(402);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double a = val(rng), b = val(rng), s = scale(rng);

    double de = bipartite_nonlinear_index(pair_of(a, b));
    CHECK(de == bipartite_nonlinear_index(pair_of(b, a)));
    CHECK(bipartite_nonlinear_index(pair_of(s * a, s * b))
              == doctest::Approx(s * de).epsilon(1e-12));

    double r = bidirectional_contrast_ratio(pair_of(a, b));
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    CHECK(r == bidirectional_contrast_ratio(pair_of(b, a)));
    // contrast is scale-free
    CHECK(bidirectional_contrast_ratio(pair_of(s * a, s * b))
              == doctest::Approx(r).epsilon(1e-12));
  }
}

#include "spatialcorr/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "spatialcorr/error.hpp"

namespace spatialcorr {

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) {
    throw Error(ErrorCode::kInsufficientData,
                "t-test needs positive degrees of freedom");
  }
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace spatialcorr

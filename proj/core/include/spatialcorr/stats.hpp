#pragma once

namespace spatialcorr {

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df`
/// degrees of freedom. Infinite |t| gives 0; NaN propagates.
double student_t_two_sided_p(double t, double df);

}  // namespace spatialcorr

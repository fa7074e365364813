#include "alp/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "alp/error.hpp"

namespace alp {

namespace {

void require_1d(const FemSpace& fem, const char* what) {
  if (fem.mesh().dimension() != 1) throw InvalidArgument(std::string(what) + " needs a 1D mesh");
  if (!fem.mesh().is_uniform_interval(1e-6)) {
    throw InvalidArgument(std::string(what) + " needs nodes sorted along the interval");
  }
}

}  // namespace

double metric_l2_relative_error(const FemSpace& fem, const Field& u, const Field& u_ref) {
  const double ref = l2_norm(fem, u_ref);
  if (!(ref > 0.0)) throw NumericalError("reference field has zero L2 norm");
  return l2_norm(fem, u - u_ref) / ref;
}

double peak_location(const FemSpace& fem, const Field& u) {
  fem.require_field(u, "peak_location");
  require_1d(fem, "peak_location");
  Index k = 0;
  const double top = u.maxCoeff(&k);
  if (!(top - u.minCoeff() > 1e-12)) throw NumericalError("field is flat; no unique maximum");
  const double x = fem.mesh().node(k)[0];
  if (k == 0 || k + 1 == u.size()) return x;
  const double h = fem.mesh().node(k + 1)[0] - x;
  const double curvature = u[k - 1] - 2.0 * u[k] + u[k + 1];
  if (!(curvature < 0.0)) return x;
  return x + 0.5 * h * (u[k - 1] - u[k + 1]) / curvature;
}

double metric_peak_position_error(const FemSpace& fem, const Field& u, const Field& u_exact,
                                  double travel_distance) {
  if (!(travel_distance > 0.0)) throw InvalidArgument("travel distance must be positive");
  return std::abs(peak_location(fem, u) - peak_location(fem, u_exact)) / travel_distance;
}

Index count_local_maxima(const FemSpace& fem, const Field& u, double fraction) {
  fem.require_field(u, "count_local_maxima");
  require_1d(fem, "count_local_maxima");
  const double level = fraction * u.maxCoeff();
  Index count = 0;
  const Index n = u.size();
  for (Index i = 1; i + 1 < n; ++i) {
    if (!(u[i] > u[i - 1]) || !(u[i] > level)) continue;
    Index j = i;
    while (j + 1 < n && u[j + 1] == u[i]) ++j;
    if (j + 1 < n && u[j + 1] < u[i]) ++count;
    i = j;
  }
  return count;
}

std::array<double, 2> superlevel_extent(const FemSpace& fem, const Field& u, double level) {
  fem.require_field(u, "superlevel_extent");
  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo[2] = {inf, inf};
  double hi[2] = {-inf, -inf};
  bool any = false;
  for (Index i = 0; i < u.size(); ++i) {
    if (!(u[i] > level)) continue;
    any = true;
    const Point& p = fem.mesh().node(i);
    for (int d = 0; d < 2; ++d) {
      lo[d] = std::min(lo[d], p[d]);
      hi[d] = std::max(hi[d], p[d]);
    }
  }
  if (!any) return {0.0, 0.0};
  return {hi[0] - lo[0], hi[1] - lo[1]};
}

}  // namespace alp

#pragma once

#include <array>

#include "alp/fem_space.hpp"

namespace alp {

/// ||u - u_ref||_L2 / ||u_ref||_L2. Throws if u_ref has zero norm.
double metric_l2_relative_error(const FemSpace& fem, const Field& u, const Field& u_ref);

/// Location of the maximum of a 1D field, refined by the parabola through the
/// maximal node and its neighbours. Throws on a flat field.
double peak_location(const FemSpace& fem, const Field& u);

/// |argmax u - argmax u_exact| / travel_distance.
double metric_peak_position_error(const FemSpace& fem, const Field& u, const Field& u_exact,
                                  double travel_distance);

/// Strict interior local maxima of a 1D field whose value exceeds
/// fraction * max(u). Plateaus count once.
Index count_local_maxima(const FemSpace& fem, const Field& u, double fraction);

/// Bounding-box extents (x, y) of the nodes where u > level; zeros if none.
std::array<double, 2> superlevel_extent(const FemSpace& fem, const Field& u, double level);

}  // namespace alp

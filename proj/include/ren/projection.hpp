#pragma once

#include "ren/types.hpp"

namespace ren {

/// Euclidean projection onto the l1 ball of the given radius. Inputs already
/// inside the ball are returned unchanged; otherwise every entry is soft
/// thresholded by the unique theta > 0 that lands the result on the boundary.
/// Sort based, O(p log p), deterministic.
Vector project_l1_ball(const Vector& v, double radius);

}  // namespace ren

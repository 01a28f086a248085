#include "ren/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ren {

Vector project_l1_ball(const Vector& v, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("project_l1_ball: radius <= 0");
  if (!v.allFinite())
    throw std::invalid_argument("project_l1_ball: non-finite input");

  const Eigen::Index p = v.size();
  double l1 = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) l1 += std::fabs(v(i));
  if (l1 <= radius) return v;

  std::vector<double> mags(p);
  for (Eigen::Index i = 0; i < p; ++i) mags[i] = std::fabs(v(i));
  std::sort(mags.begin(), mags.end(), std::greater<double>());

  // Largest j with mags[j] > (sum of the j+1 leading mags - radius) / (j+1).
  double cumulative = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    cumulative += mags[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (mags[j] > candidate) theta = candidate;
  }

  Vector out(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double shrunk = std::fabs(v(i)) - theta;
    out(i) = shrunk > 0.0 ? std::copysign(shrunk, v(i)) : 0.0;
  }
  return out;
}

}  // namespace ren

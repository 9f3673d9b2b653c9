#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dminimax {

using Vec = std::vector<double>;

/// Concatenated (theta, alpha) pair: the joint variable of the game.
/// theta occupies the first p1 entries, alpha the remaining p2.
struct JointPoint {
  Vec data;
  std::size_t p1 = 0;

  std::size_t dim() const { return data.size(); }
  std::size_t p2() const { return data.size() - p1; }

  Vec theta() const { return Vec(data.begin(), data.begin() + p1); }
  Vec alpha() const { return Vec(data.begin() + p1, data.end()); }
};

inline JointPoint join(const Vec& theta, const Vec& alpha) {
  for (std::size_t i = 0; i < theta.size(); ++i)
    if (!std::isfinite(theta[i]))
      throw std::invalid_argument("join: non-finite entry at theta[" +
                                  std::to_string(i) + "]");
  for (std::size_t i = 0; i < alpha.size(); ++i)
    if (!std::isfinite(alpha[i]))
      throw std::invalid_argument("join: non-finite entry at alpha[" +
                                  std::to_string(i) + "]");
  JointPoint y;
  y.data = theta;
  y.data.insert(y.data.end(), alpha.begin(), alpha.end());
  y.p1 = theta.size();
  return y;
}

inline std::pair<Vec, Vec> split(const JointPoint& y) {
  return {y.theta(), y.alpha()};
}

inline double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double norm_inf(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace dminimax

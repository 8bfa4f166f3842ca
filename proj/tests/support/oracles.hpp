#ifndef LMVAR_TESTS_ORACLES_HPP
#define LMVAR_TESTS_ORACLES_HPP

// Test-only oracles and generators. The eigenvalue oracle here solves the
// characteristic polynomial by bisection and never touches the library's
// closed-form path.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lmvar/geometry.hpp"
#include "lmvar/random.hpp"

namespace oracles {

/// det(A - lambda I), evaluated directly.
inline double charpoly(const lmvar::MatN& a, double lambda) {
  if (a.n == 2) {
    return (a(0, 0) - lambda) * (a(1, 1) - lambda) - a(0, 1) * a(1, 0);
  }
  const double m00 = a(0, 0) - lambda;
  const double m11 = a(1, 1) - lambda;
  const double m22 = a(2, 2) - lambda;
  return m00 * (m11 * m22 - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * m22 - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - m11 * a(2, 0));
}

/// Roots of det(A - lambda I) = 0 by sign-change scan plus bisection,
/// descending. Requires distinct roots (generate matrices with a gap).
inline std::vector<double> bisect_eigenvalues(const lmvar::MatN& a, int samples = 8192) {
  // Gershgorin bounds
  double lo = 0.0;
  double hi = 0.0;
  for (int r = 0; r < a.n; ++r) {
    double radius = 0.0;
    for (int c = 0; c < a.n; ++c) {
      if (c != r) {
        radius += std::abs(a(r, c));
      }
    }
    lo = std::min(lo, a(r, r) - radius);
    hi = std::max(hi, a(r, r) + radius);
  }
  lo -= 1.0;
  hi += 1.0;

  std::vector<double> roots;
  double prev_t = lo;
  double prev_p = charpoly(a, lo);
  for (int i = 1; i <= samples; ++i) {
    const double t = lo + (hi - lo) * i / samples;
    const double p = charpoly(a, t);
    if (prev_p == 0.0) {
      roots.push_back(prev_t);
    } else if ((prev_p < 0.0) != (p < 0.0)) {
      double left = prev_t;
      double right = t;
      double pl = prev_p;
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (left + right);
        const double pm = charpoly(a, mid);
        if (pm == 0.0) {
          left = right = mid;
          break;
        }
        if ((pl < 0.0) != (pm < 0.0)) {
          right = mid;
        } else {
          left = mid;
          pl = pm;
        }
      }
      roots.push_back(0.5 * (left + right));
    }
    prev_t = t;
    prev_p = p;
  }
  if (static_cast<int>(roots.size()) != a.n) {
    throw std::runtime_error("bisection oracle: expected " + std::to_string(a.n) +
                             " roots, found " + std::to_string(roots.size()));
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

inline lmvar::MatN rotation2(double angle) {
  lmvar::MatN r;
  r.n = 2;
  r(0, 0) = std::cos(angle);
  r(0, 1) = -std::sin(angle);
  r(1, 0) = std::sin(angle);
  r(1, 1) = std::cos(angle);
  return r;
}

/// Uniform-ish random rotation from a normalized quaternion.
inline lmvar::MatN rotation3(lmvar::Rng& rng) {
  double q[4];
  double norm2 = 0.0;
  for (double& c : q) {
    c = rng.gaussian();
    norm2 += c * c;
  }
  const double inv = 1.0 / std::sqrt(norm2);
  const double w = q[0] * inv;
  const double x = q[1] * inv;
  const double y = q[2] * inv;
  const double z = q[3] * inv;

  lmvar::MatN r;
  r.n = 3;
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - w * z);
  r(0, 2) = 2 * (x * z + w * y);
  r(1, 0) = 2 * (x * y + w * z);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - w * x);
  r(2, 0) = 2 * (x * z - w * y);
  r(2, 1) = 2 * (y * z + w * x);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

/// R diag(d) R^T with eigenvalues in [0, ~10] separated by at least min_gap.
inline lmvar::MatN random_spd(lmvar::Rng& rng, int dim, double min_gap = 0.05) {
  std::vector<double> d(static_cast<std::size_t>(dim));
  for (auto& value : d) {
    value = rng.uniform(0.0, 10.0);
  }
  std::sort(d.begin(), d.end());
  for (std::size_t i = 1; i < d.size(); ++i) {
    d[i] = std::max(d[i], d[i - 1] + min_gap);
  }

  const lmvar::MatN r =
      dim == 2 ? rotation2(rng.uniform(0.0, 2.0 * std::numbers::pi)) : rotation3(rng);
  lmvar::MatN out;
  out.n = dim;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      double sum = 0.0;
      for (int k = 0; k < dim; ++k) {
        sum += r(i, k) * d[static_cast<std::size_t>(k)] * r(j, k);
      }
      out(i, j) = sum;
    }
  }
  // Exact symmetry despite rounding
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double s = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

inline std::vector<std::array<double, 2>> random_cloud2(lmvar::Rng& rng,
                                                        std::size_t count,
                                                        double scale = 5.0,
                                                        double offset = 0.0) {
  std::vector<std::array<double, 2>> points(count);
  for (auto& p : points) {
    p = {offset + scale * rng.gaussian(), offset + scale * rng.gaussian()};
  }
  return points;
}

inline std::vector<std::array<double, 2>> transform_cloud(
    const std::vector<std::array<double, 2>>& points, const lmvar::MatN& rotation,
    double tx, double ty, double scale = 1.0) {
  std::vector<std::array<double, 2>> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = scale * points[i][0];
    const double y = scale * points[i][1];
    out[i] = {rotation(0, 0) * x + rotation(0, 1) * y + tx,
              rotation(1, 0) * x + rotation(1, 1) * y + ty};
  }
  return out;
}

}  // namespace oracles

#endif  // LMVAR_TESTS_ORACLES_HPP

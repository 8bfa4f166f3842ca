#include "lmvar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "lmvar/errors.hpp"

namespace lmvar {

namespace {

using Vec3d = std::array<double, 3>;

Vec3d cross(const Vec3d& a, const Vec3d& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3d& a, const Vec3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Vec3d scaled(const Vec3d& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

Vec3d sub(const Vec3d& a, const Vec3d& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

// Deterministic orientation: flip so the first nonzero component is positive.
void canonical_sign(Vec3d& v) {
  for (double c : v) {
    if (c > 0.0) return;
    if (c < 0.0) {
      v = scaled(v, -1.0);
      return;
    }
  }
}

Vec3d mat_mul(const MatN& a, const Vec3d& x) {
  Vec3d y{};
  for (int r = 0; r < 3; ++r) {
    y[static_cast<std::size_t>(r)] =
        a(r, 0) * x[0] + a(r, 1) * x[1] + a(r, 2) * x[2];
  }
  return y;
}

void check_symmetry(const MatN& a) {
  double scale = 0.0;
  for (int r = 0; r < a.n; ++r) {
    for (int c = 0; c < a.n; ++c) {
      scale = std::max(scale, std::abs(a(r, c)));
    }
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  for (int r = 0; r < a.n; ++r) {
    for (int c = r + 1; c < a.n; ++c) {
      if (std::abs(a(r, c) - a(c, r)) > tol) {
        throw DataError("sym_eigen: matrix is not symmetric");
      }
    }
  }
}

EigenDecomposition eigen2(const MatN& m) {
  const double a = m(0, 0);
  const double b = 0.5 * (m(0, 1) + m(1, 0));
  const double c = m(1, 1);

  const double half_trace = 0.5 * (a + c);
  const double disc = std::hypot(0.5 * (a - c), b);

  EigenDecomposition out;
  out.dim = 2;
  out.values = {half_trace + disc, half_trace - disc, 0.0};

  // Candidate eigenvectors for the larger eigenvalue; take the better
  // conditioned of the two algebraic forms.
  const Vec3d cand1{b, out.values[0] - a, 0.0};
  const Vec3d cand2{out.values[0] - c, b, 0.0};
  const double n1 = dot(cand1, cand1);
  const double n2 = dot(cand2, cand2);

  Vec3d v0{1.0, 0.0, 0.0};
  if (n1 > 0.0 || n2 > 0.0) {
    v0 = n1 >= n2 ? cand1 : cand2;
    v0 = scaled(v0, 1.0 / std::sqrt(std::max(n1, n2)));
  } else if (c > a) {
    v0 = {0.0, 1.0, 0.0};  // diagonal with swapped order
  }
  Vec3d v1{-v0[1], v0[0], 0.0};
  canonical_sign(v0);
  canonical_sign(v1);
  out.vectors[0] = v0;
  out.vectors[1] = v1;
  out.vectors[2] = {0.0, 0.0, 0.0};
  return out;
}

// Largest-norm cross product of rows of (A - eval*I); valid when the
// eigenvalue has multiplicity 1 so that matrix has rank 2.
Vec3d eigenvector_rank2(const MatN& a, double eval) {
  const Vec3d row0{a(0, 0) - eval, a(0, 1), a(0, 2)};
  const Vec3d row1{a(0, 1), a(1, 1) - eval, a(1, 2)};
  const Vec3d row2{a(0, 2), a(1, 2), a(2, 2) - eval};

  const std::array<Vec3d, 3> products{cross(row0, row1), cross(row0, row2),
                                      cross(row1, row2)};
  int best = 0;
  double best_norm2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double n2 = dot(products[static_cast<std::size_t>(i)],
                          products[static_cast<std::size_t>(i)]);
    if (n2 > best_norm2) {
      best_norm2 = n2;
      best = i;
    }
  }
  if (best_norm2 == 0.0) {
    return {1.0, 0.0, 0.0};
  }
  return scaled(products[static_cast<std::size_t>(best)],
                1.0 / std::sqrt(best_norm2));
}

// Unit vectors spanning the plane orthogonal to unit vector w.
std::pair<Vec3d, Vec3d> orthogonal_complement(const Vec3d& w) {
  Vec3d u;
  if (std::abs(w[0]) > std::abs(w[1])) {
    const double inv = 1.0 / std::sqrt(w[0] * w[0] + w[2] * w[2]);
    u = {-w[2] * inv, 0.0, w[0] * inv};
  } else {
    const double inv = 1.0 / std::sqrt(w[1] * w[1] + w[2] * w[2]);
    u = {0.0, w[2] * inv, -w[1] * inv};
  }
  return {u, cross(w, u)};
}

// Eigenvector for `eval` inside the plane orthogonal to the known
// eigenvector w: reduces to the null vector of a 2x2 projection.
Vec3d eigenvector_in_complement(const MatN& a, double eval, const Vec3d& w) {
  const auto [u, v] = orthogonal_complement(w);
  const Vec3d au = mat_mul(a, u);
  const Vec3d av = mat_mul(a, v);
  double m00 = dot(u, au) - eval;
  double m01 = dot(u, av);
  double m11 = dot(v, av) - eval;

  const double abs00 = std::abs(m00);
  const double abs01 = std::abs(m01);
  const double abs11 = std::abs(m11);
  if (abs00 >= abs11) {
    if (std::max(abs00, abs01) == 0.0) {
      return u;  // projection vanishes: repeated eigenvalue, any direction works
    }
    if (abs00 >= abs01) {
      m01 /= m00;
      m00 = 1.0 / std::sqrt(1.0 + m01 * m01);
      m01 *= m00;
    } else {
      m00 /= m01;
      m01 = 1.0 / std::sqrt(1.0 + m00 * m00);
      m00 *= m01;
    }
    return sub(scaled(u, m01), scaled(v, m00));
  }
  if (std::max(abs11, abs01) == 0.0) {
    return u;
  }
  if (abs11 >= abs01) {
    m01 /= m11;
    m11 = 1.0 / std::sqrt(1.0 + m01 * m01);
    m01 *= m11;
  } else {
    m11 /= m01;
    m01 = 1.0 / std::sqrt(1.0 + m11 * m11);
    m11 *= m01;
  }
  return sub(scaled(u, m11), scaled(v, m01));
}

EigenDecomposition eigen3(const MatN& a) {
  EigenDecomposition out;
  out.dim = 3;

  double scale = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      scale = std::max(scale, std::abs(a(r, c)));
    }
  }

  const double off2 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  if (off2 <= 1e-28 * std::max(scale * scale, 1.0)) {
    // Effectively diagonal: sort the diagonal, permute the identity basis.
    std::array<std::pair<double, int>, 3> entries{
        std::pair{a(0, 0), 0}, std::pair{a(1, 1), 1}, std::pair{a(2, 2), 2}};
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });
    for (int i = 0; i < 3; ++i) {
      out.values[static_cast<std::size_t>(i)] = entries[static_cast<std::size_t>(i)].first;
      Vec3d v{};
      v[static_cast<std::size_t>(entries[static_cast<std::size_t>(i)].second)] = 1.0;
      out.vectors[static_cast<std::size_t>(i)] = v;
    }
    return out;
  }

  // Trigonometric closed form for the roots of the characteristic polynomial.
  const double q = a.trace() / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * off2;
  const double p = std::sqrt(p2 / 6.0);

  MatN b;
  b.n = 3;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      b(r, c) = (a(r, c) - (r == c ? q : 0.0)) / p;
    }
  }
  const double det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                       b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                       b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  const double r = std::clamp(det_b / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;

  const double e0 = q + 2.0 * p * std::cos(phi);
  const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double e1 = 3.0 * q - e0 - e2;
  out.values = {e0, e1, e2};

  // Extract the best-separated extreme eigenvector first; the middle one
  // comes from the orthogonal complement, the last from the cross product.
  Vec3d v0, v1, v2;
  if (e0 - e1 >= e1 - e2) {
    v0 = eigenvector_rank2(a, e0);
    v1 = eigenvector_in_complement(a, e1, v0);
    v2 = cross(v0, v1);
  } else {
    v2 = eigenvector_rank2(a, e2);
    v1 = eigenvector_in_complement(a, e1, v2);
    v0 = cross(v1, v2);
  }
  canonical_sign(v0);
  canonical_sign(v1);
  canonical_sign(v2);
  out.vectors = {v0, v1, v2};
  return out;
}

}  // namespace

double MatN::trace() const {
  double t = 0.0;
  for (int i = 0; i < n; ++i) {
    t += (*this)(i, i);
  }
  return t;
}

PointCloud PointCloud::from_2d(std::vector<std::array<double, 2>> points) {
  std::vector<double> flat;
  flat.reserve(points.size() * 2);
  for (const auto& p : points) {
    flat.push_back(p[0]);
    flat.push_back(p[1]);
  }
  return PointCloud(std::move(flat), 2);
}

PointCloud PointCloud::from_3d(std::vector<std::array<double, 3>> points) {
  std::vector<double> flat;
  flat.reserve(points.size() * 3);
  for (const auto& p : points) {
    flat.insert(flat.end(), p.begin(), p.end());
  }
  return PointCloud(std::move(flat), 3);
}

PointCloud::PointCloud(std::vector<double> interleaved, int dim)
    : coords_(std::move(interleaved)), dim_(dim) {
  if (dim_ != 2 && dim_ != 3) {
    throw DataError("point cloud: dimension must be 2 or 3");
  }
  if (coords_.empty()) {
    throw DataError("point cloud: needs at least one point");
  }
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0) {
    throw DataError("point cloud: coordinate count is not a multiple of the dimension");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw DataError("point cloud: coordinates must be finite");
    }
  }
}

EigenDecomposition sym_eigen(const MatN& a) {
  if (a.n != 2 && a.n != 3) {
    throw DataError("sym_eigen: dimension must be 2 or 3");
  }
  check_symmetry(a);
  return a.n == 2 ? eigen2(a) : eigen3(a);
}

CovarianceSummary summarize(const PointCloud& cloud) {
  const int n = cloud.dim();
  const std::size_t count = cloud.size();

  CovarianceSummary out;
  out.dim = n;
  out.mean.n = n;
  out.covariance.n = n;

  for (int axis = 0; axis < n; ++axis) {
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      sum += cloud.at(i, axis);
    }
    out.mean[axis] = sum / static_cast<double>(count);
  }

  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) {
      double sum = 0.0;
      for (std::size_t i = 0; i < count; ++i) {
        sum += (cloud.at(i, r) - out.mean[r]) * (cloud.at(i, c) - out.mean[c]);
      }
      const double value = sum / static_cast<double>(count);
      out.covariance(r, c) = value;
      out.covariance(c, r) = value;
    }
  }

  const EigenDecomposition eig = sym_eigen(out.covariance);
  out.eigenvectors = eig.vectors;

  const double clamp_tol = 1e-12 * std::max(1.0, std::abs(out.covariance.trace()));
  for (int i = 0; i < n; ++i) {
    double value = eig.values[static_cast<std::size_t>(i)];
    if (value < -clamp_tol) {
      throw InternalError("covariance eigenvalue " + std::to_string(value) +
                          " is negative beyond rounding noise");
    }
    out.eigenvalues[static_cast<std::size_t>(i)] = std::max(value, 0.0);
  }
  return out;
}

EllipseParams ellipse_params(const CovarianceSummary& summary, double k_sigma) {
  if (summary.dim != 2) {
    throw DataError("ellipse_params: only 2D summaries are supported");
  }
  if (!(k_sigma > 0.0)) {
    throw DataError("ellipse_params: k_sigma must be positive");
  }

  EllipseParams out;
  out.center = {summary.mean[0], summary.mean[1]};
  out.semi_axes = {k_sigma * std::sqrt(summary.eigenvalues[0]),
                   k_sigma * std::sqrt(summary.eigenvalues[1])};
  for (int i = 0; i < 2; ++i) {
    out.axes[static_cast<std::size_t>(i)] = {
        summary.eigenvectors[static_cast<std::size_t>(i)][0],
        summary.eigenvectors[static_cast<std::size_t>(i)][1]};
  }
  double angle = std::atan2(out.axes[0][1], out.axes[0][0]);
  if (angle < 0.0) {
    angle += std::numbers::pi;
  }
  if (angle >= std::numbers::pi) {
    angle -= std::numbers::pi;
  }
  out.angle_rad = angle;
  return out;
}

}  // namespace lmvar

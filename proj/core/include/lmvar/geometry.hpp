#ifndef LMVAR_GEOMETRY_HPP
#define LMVAR_GEOMETRY_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace lmvar {

/// Fixed-capacity vector/matrix for 2D and 3D statistics. Entries at
/// indices >= n are zero.
struct VecN {
  int n = 2;
  std::array<double, 3> v{};

  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
};

struct MatN {
  int n = 2;
  std::array<std::array<double, 3>, 3> m{};

  double operator()(int r, int c) const {
    return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  double& operator()(int r, int c) {
    return m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  double trace() const;
};

/// An ordered list of same-dimension points (units: mm). Never empty.
class PointCloud {
 public:
  static PointCloud from_2d(std::vector<std::array<double, 2>> points);
  static PointCloud from_3d(std::vector<std::array<double, 3>> points);
  /// Row-major interleaved coordinates, dim in {2, 3}.
  PointCloud(std::vector<double> interleaved, int dim);

  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  int dim() const { return dim_; }
  double at(std::size_t i, int axis) const {
    return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  const std::vector<double>& raw() const { return coords_; }

 private:
  std::vector<double> coords_;
  int dim_ = 2;
};

/// Eigenpairs of a symmetric matrix, eigenvalues descending,
/// vectors[i] is the unit eigenvector paired with values[i].
struct EigenDecomposition {
  int dim = 2;
  std::array<double, 3> values{};
  std::array<std::array<double, 3>, 3> vectors{};
};

/// Closed-form eigen-decomposition of a symmetric 2x2 or 3x3 matrix
/// (quadratic formula resp. the trigonometric method). Input must be
/// symmetric within 1e-12 relative to its largest entry.
EigenDecomposition sym_eigen(const MatN& a);

struct CovarianceSummary {
  VecN mean;
  MatN covariance;  // population-normalized (1/P), mm^2
  std::array<double, 3> eigenvalues{};  // descending, clamped at 0
  std::array<std::array<double, 3>, 3> eigenvectors{};
  int dim = 2;
};

/// Mean, population covariance and its eigen-structure. A single point
/// yields the zero covariance. Eigenvalues more negative than rounding
/// noise raise InternalError.
CovarianceSummary summarize(const PointCloud& cloud);

struct EllipseParams {
  std::array<double, 2> center{};
  std::array<double, 2> semi_axes{};  // k_sigma * sqrt(eigenvalue), descending
  std::array<std::array<double, 2>, 2> axes{};  // unit directions, major first
  double angle_rad = 0.0;  // major-axis angle in [0, pi)
};

/// Confidence ellipse of a 2D summary at k_sigma standard deviations.
EllipseParams ellipse_params(const CovarianceSummary& summary, double k_sigma);

}  // namespace lmvar

#endif  // LMVAR_GEOMETRY_HPP

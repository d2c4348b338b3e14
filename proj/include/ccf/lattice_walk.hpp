#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ccf/field.hpp"

namespace ccf {

using Vec3d = std::array<double, 3>;

/// Point of the trace-zero plane {sum = 0} in R^3.
struct PlanePoint {
  double u = 0, v = 0;  // coordinates in the orthonormal frame (2,-1,-1)/sqrt6, (0,1,-1)/sqrt2
  Vec3d embed() const;
  double length() const;
  double angle() const;
};
PlanePoint to_plane(const Vec3d& x);

/// Hexagonal grid of spacing h; i*A + j*B with A = h e1 and B the cyclic
/// shift of A.
PlanePoint hex_point(double h, std::int64_t i, std::int64_t j);
/// Euclidean covering radius of the grid.
inline double hex_covering_radius(double h) { return h / 1.7320508075688772; }

/// Orders points into shells of width h by length; within a shell by
/// angle, alternating direction so consecutive points stay close.
std::vector<std::vector<PlanePoint>> shell_order(std::vector<PlanePoint> points, double h);

/// A lattice in O_K (rows are integral coordinates) seen through the
/// weighted embedding x -> (sigma_i(x) exp(-c_i)) with c = g + scale*(1,1,1).
/// Keeps an exact basis reduced for the current weights.
class WeightedLattice {
 public:
  WeightedLattice(const CubicField& k, const ZMat3& basis, double log_scale);

  void move_to(const Vec3d& g);
  const Vec3d& position() const { return g_; }

  /// Calls visit(x, y) for each nonzero x with |y|^2 <= radius^2 where y is
  /// the weighted embedding. visit returns false to stop early.
  void enumerate(double radius, const std::function<bool(const IntegralVector&, const Vec3d&)>& visit) const;

 private:
  void refresh();
  void reduce();
  void step_to(const Vec3d& g);

  const CubicField* k_;
  ZMat3 basis_;
  double scale_;
  Vec3d g_{0, 0, 0};
  std::array<Vec3d, 3> y_;
};

}  // namespace ccf

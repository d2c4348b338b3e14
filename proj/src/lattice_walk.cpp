#include "ccf/lattice_walk.hpp"

#include <algorithm>
#include <cmath>

#include "ccf/error.hpp"

namespace ccf {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kSqrt6 = 2.449489742783178;

double dot(const Vec3d& a, const Vec3d& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

Vec3d PlanePoint::embed() const {
  return {2 * u / kSqrt6, -u / kSqrt6 + v / kSqrt2, -u / kSqrt6 - v / kSqrt2};
}

double PlanePoint::length() const { return std::hypot(u, v); }

double PlanePoint::angle() const { return std::atan2(v, u); }

PlanePoint to_plane(const Vec3d& x) {
  return {(2 * x[0] - x[1] - x[2]) / kSqrt6, (x[1] - x[2]) / kSqrt2};
}

PlanePoint hex_point(double h, std::int64_t i, std::int64_t j) {
  return {h * (static_cast<double>(i) - 0.5 * static_cast<double>(j)), h * kSqrt3 / 2 * static_cast<double>(j)};
}

std::vector<std::vector<PlanePoint>> shell_order(std::vector<PlanePoint> points, double h) {
  std::vector<std::vector<PlanePoint>> shells;
  for (const auto& p : points) {
    auto k = static_cast<std::size_t>(std::ceil(p.length() / h - 1e-12));
    if (shells.size() <= k) shells.resize(k + 1);
    shells[k].push_back(p);
  }
  for (std::size_t k = 0; k < shells.size(); ++k) {
    auto& s = shells[k];
    std::sort(s.begin(), s.end(), [&](const PlanePoint& a, const PlanePoint& b) {
      return (k % 2 == 0) ? a.angle() < b.angle() : a.angle() > b.angle();
    });
  }
  return shells;
}

WeightedLattice::WeightedLattice(const CubicField& k, const ZMat3& basis, double log_scale)
    : k_(&k), basis_(basis), scale_(log_scale) {
  refresh();
  reduce();
}

void WeightedLattice::refresh() {
  std::size_t size_bits = 0;
  for (const auto& row : basis_)
    for (const auto& c : row) size_bits = std::max(size_bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  double cmax = 0;
  for (double gi : g_) cmax = std::max(cmax, std::abs(gi + scale_));
  auto bits = static_cast<mpfr_prec_t>(128 + size_bits + static_cast<std::size_t>(3 * cmax));
  if (bits > CubicField::kEmbeddingBits) {
    throw Error(ErrorKind::insufficient_effort, "weighted embedding needs more than the cached precision");
  }
  std::array<Real, 3> w;
  for (int i = 0; i < 3; ++i) w[i] = exp(Real(-(g_[i] + scale_), bits));
  for (int r = 0; r < 3; ++r) {
    auto e = k_->embed_integral(basis_[r], bits);
    for (int i = 0; i < 3; ++i) y_[r][i] = (e[i] * w[i]).to_double();
  }
}

// LLL with delta 0.99 on the weighted rows, applied exactly to basis_.
void WeightedLattice::reduce() {
  for (int guard = 0; guard < 64; ++guard) {
    bool changed = false;
    int kk = 1;
    int iterations = 0;
    while (kk < 3) {
      if (++iterations > 10000) throw Error(ErrorKind::internal, "lattice reduction did not converge");
      // Gram-Schmidt for rows 0..kk.
      std::array<Vec3d, 3> bs;
      std::array<std::array<double, 3>, 3> mu{};
      std::array<double, 3> nb{};
      for (int i = 0; i <= kk; ++i) {
        bs[i] = y_[i];
        for (int j = 0; j < i; ++j) {
          mu[i][j] = dot(y_[i], bs[j]) / nb[j];
          for (int c = 0; c < 3; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
        }
        nb[i] = dot(bs[i], bs[i]);
      }
      // Size reduction of row kk.
      for (int j = kk - 1; j >= 0; --j) {
        double q = std::round(mu[kk][j]);
        if (q == 0) continue;
        const auto qi = static_cast<long>(q);
        for (int c = 0; c < 3; ++c) {
          y_[kk][c] -= q * y_[j][c];
          basis_[kk][c] -= qi * basis_[j][c];
        }
        for (int l = 0; l <= j; ++l) mu[kk][l] -= q * (l == j ? 1.0 : mu[j][l]);
        changed = true;
      }
      // |b*_kk|^2 is unchanged by size reduction.
      if (nb[kk] >= (0.99 - mu[kk][kk - 1] * mu[kk][kk - 1]) * nb[kk - 1]) {
        ++kk;
      } else {
        std::swap(y_[kk], y_[kk - 1]);
        std::swap(basis_[kk], basis_[kk - 1]);
        changed = true;
        kk = std::max(kk - 1, 1);
      }
    }
    if (!changed) return;
    // Recompute from the exact basis to shed floating drift, then re-check.
    refresh();
  }
}

void WeightedLattice::step_to(const Vec3d& g) {
  g_ = g;
  refresh();
  reduce();
}

void WeightedLattice::move_to(const Vec3d& g) {
  double dist = 0;
  for (int i = 0; i < 3; ++i) dist = std::max(dist, std::abs(g[i] - g_[i]));
  const int steps = std::max(1, static_cast<int>(std::ceil(dist / 1.0)));
  const Vec3d start = g_;
  for (int s = 1; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    step_to({start[0] + t * (g[0] - start[0]), start[1] + t * (g[1] - start[1]), start[2] + t * (g[2] - start[2])});
  }
}

void WeightedLattice::enumerate(double radius,
                                const std::function<bool(const IntegralVector&, const Vec3d&)>& visit) const {
  std::array<Vec3d, 3> bs;
  std::array<std::array<double, 3>, 3> mu{};
  std::array<double, 3> nb{};
  for (int i = 0; i < 3; ++i) {
    bs[i] = y_[i];
    for (int j = 0; j < i; ++j) {
      mu[i][j] = dot(y_[i], bs[j]) / nb[j];
      for (int c = 0; c < 3; ++c) bs[i][c] -= mu[i][j] * bs[j][c];
    }
    nb[i] = dot(bs[i], bs[i]);
  }
  // Slack for rounding in the weighted coordinates.
  const double r2 = radius * radius * (1 + 1e-9) + 1e-12;
  std::array<long, 3> x{};
  std::array<double, 3> partial{};  // squared length contributed by levels > i
  std::function<bool(int)> level = [&](int i) -> bool {
    double center = 0;
    for (int j = i + 1; j < 3; ++j) center -= static_cast<double>(x[j]) * mu[j][i];
    const double rest = r2 - (i == 2 ? 0.0 : partial[i + 1]);
    if (rest < 0) return true;
    const double span = std::sqrt(rest / nb[i]);
    const auto lo = static_cast<long>(std::ceil(center - span));
    const auto hi = static_cast<long>(std::floor(center + span));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      const double d = static_cast<double>(v) - center;
      partial[i] = (i == 2 ? 0.0 : partial[i + 1]) + d * d * nb[i];
      if (partial[i] > r2) continue;
      if (i > 0) {
        if (!level(i - 1)) return false;
        continue;
      }
      if (x[0] == 0 && x[1] == 0 && x[2] == 0) continue;
      IntegralVector e{0, 0, 0};
      Vec3d y{0, 0, 0};
      for (int r = 0; r < 3; ++r) {
        if (x[r] == 0) continue;
        for (int c = 0; c < 3; ++c) {
          e[c] += x[r] * basis_[r][c];
          y[c] += static_cast<double>(x[r]) * y_[r][c];
        }
      }
      if (!visit(e, y)) return false;
    }
    return true;
  };
  level(2);
}

}  // namespace ccf

#include "ccf/units.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccf/error.hpp"

namespace ccf {

namespace {

Vec3d log_embedding(const CubicField& k, const IntegralVector& x) {
  auto e = k.embed_integral(x, CubicField::kEmbeddingBits);
  Vec3d out;
  for (int i = 0; i < 3; ++i) out[i] = log(abs(e[i])).to_double();
  return out;
}

bool is_unit(const CubicField& k, const IntegralVector& x) {
  mpz_class n = k.norm_integral(x);
  return n == 1 || n == -1;
}

bool is_plus_minus_one(const IntegralVector& x) { return abs(x[0]) == 1 && x[1] == 0 && x[2] == 0; }

double length(const Vec3d& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

bool lex_less(const IntegralVector& a, const IntegralVector& b) {
  for (int i = 0; i < 3; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

IntegralVector unit_inverse(const CubicField& k, const IntegralVector& u) {
  const mpz_class n = k.norm_integral(u);
  if (n != 1 && n != -1) throw Error(ErrorKind::not_a_unit, "element has norm " + n.get_str());
  IntegralVector s = k.sigma_integral(u);
  IntegralVector r = k.mul_integral(s, k.sigma_integral(s));
  if (n == -1)
    for (auto& c : r) c = -c;
  return r;
}

IntegralVector unit_power(const CubicField& k, const IntegralVector& u, std::int64_t e) {
  if (e >= 0) return k.pow_integral(u, static_cast<std::uint64_t>(e));
  return k.pow_integral(unit_inverse(k, u), static_cast<std::uint64_t>(-e));
}

RealBound regulator(const CubicField& k, const IntegralVector& u1, const IntegralVector& u2, int digits) {
  const mpfr_prec_t bits = std::max<mpfr_prec_t>(digits_to_bits(digits), CubicField::kEmbeddingBits);
  auto e1 = k.embed_integral(u1, bits);
  auto e2 = k.embed_integral(u2, bits);
  Real d = log(abs(e1[0])) * log(abs(e2[1])) - log(abs(e1[1])) * log(abs(e2[0]));
  std::size_t size_bits = 0;
  for (const auto* u : {&u1, &u2})
    for (const auto& c : *u) size_bits = std::max(size_bits, mpz_sizeinbase(c.get_mpz_t(), 2));
  // Embeddings lose at most size_bits + 16 bits to cancellation; the log
  // of a value near e^-L amplifies relative error by nothing further.
  const long lost = static_cast<long>(2 * size_bits + 64);
  RealBound r{abs(d), ulp_bound(CubicField::kEmbeddingBits, lost)};
  if (r.value.is_zero()) throw Error(ErrorKind::domain, "units are dependent");
  return r;
}

UnitSystem make_unit_system(const CubicField& k, const IntegralVector& u1, const IntegralVector& u2) {
  if (!is_unit(k, u1) || !is_unit(k, u2)) throw Error(ErrorKind::not_a_unit, "element is not a unit");
  UnitSystem s;
  s.units = {u1, u2};
  s.logs = {log_embedding(k, u1), log_embedding(k, u2)};
  s.regulator = regulator(k, u1, u2, 60);
  if (s.regulator.value < s.regulator.error * Real(1e6, 64)) {
    throw Error(ErrorKind::domain, "units are not independent");
  }
  return s;
}

UnitSystem find_units(const CubicField& k, const UnitEffort& effort) {
  const double h = effort.grid_step;
  const double reach = hex_covering_radius(h);
  // Covering radius in the sup norm is at most sqrt(2/3) of the Euclidean one.
  const double delta = reach * std::sqrt(2.0 / 3.0) + 1e-9;
  const double radius = std::sqrt(3.0) * std::exp(delta);
  const ZMat3 identity{ZVec3{1, 0, 0}, ZVec3{0, 1, 0}, ZVec3{0, 0, 1}};
  WeightedLattice lattice(k, identity, 0.0);

  bool have = false;
  IntegralVector best;
  double best_len = std::numeric_limits<double>::infinity();

  double inner = -1;
  for (int b = effort.first_log2_bound; b <= effort.max_log2_bound; ++b) {
    const double outer = b * std::log(2.0);
    // Grid points near the sector between A and A + B (60 degrees): every
    // unit has a conjugate, inverse or negative there with the same length.
    std::vector<PlanePoint> pts;
    const auto n = static_cast<std::int64_t>(std::ceil(2 * outer / h)) + 2;
    for (std::int64_t a = -1; a <= n; ++a)
      for (std::int64_t c = -1; c <= n; ++c) {
        PlanePoint p = hex_point(h, a + c, c);
        const double len = p.length();
        if (len <= outer && len > inner) pts.push_back(p);
      }
    auto shells = shell_order(std::move(pts), h);
    for (std::size_t si = 0; si < shells.size(); ++si) {
      for (const auto& p : shells[si]) {
        const Vec3d g = p.embed();
        lattice.move_to(g);
        lattice.enumerate(radius, [&](const IntegralVector& x, const Vec3d& y) {
          const double approx = std::abs(y[0] * y[1] * y[2]);
          if (approx < 0.5 || approx > 2.0) return true;
          if (!is_unit(k, x) || is_plus_minus_one(x)) return true;
          Vec3d l;
          for (int i = 0; i < 3; ++i) l[i] = g[i] + std::log(std::abs(y[i]));
          const double len = length(l);
          if (!have || len < best_len * (1 - 1e-9) || (len < best_len * (1 + 1e-9) && lex_less(x, best))) {
            have = true;
            best = x;
            best_len = std::min(len, best_len);
          }
          return true;
        });
      }
      const double covered = std::min(static_cast<double>(si) * h, outer) - reach;
      if (have && covered >= best_len) {
        UnitSystem s = make_unit_system(k, best, k.sigma_integral(best));
        s.saturated = true;
        s.searched_log_radius = covered;
        return s;
      }
    }
    inner = outer;
  }
  if (!have) {
    throw Error(ErrorKind::insufficient_effort,
                "no unit found with log radius up to ln(2^" + std::to_string(effort.max_log2_bound) + ")");
  }
  UnitSystem s = make_unit_system(k, best, k.sigma_integral(best));
  s.searched_log_radius = inner - reach;
  return s;
}

std::vector<UnitWord> candidate_words(int depth) {
  std::vector<UnitWord> words;
  for (std::int64_t e1 = -depth; e1 <= depth; ++e1)
    for (std::int64_t e2 = -depth; e2 <= depth; ++e2) {
      if (e1 == 0 && e2 == 0) continue;
      words.push_back({1, e1, e2});
    }
  std::stable_sort(words.begin(), words.end(), [](const UnitWord& a, const UnitWord& b) {
    auto key = [](const UnitWord& w) {
      return std::make_tuple(std::max(std::abs(w.e1), std::abs(w.e2)), std::abs(w.e1) + std::abs(w.e2), w.e1, w.e2);
    };
    return key(a) < key(b);
  });
  std::vector<UnitWord> out;
  for (const auto& w : words) {
    out.push_back({1, w.e1, w.e2});
    out.push_back({-1, w.e1, w.e2});
  }
  return out;
}

IntegralVector evaluate_word(const CubicField& k, const UnitSystem& u, const UnitWord& w) {
  IntegralVector r = k.mul_integral(unit_power(k, u.units[0], w.e1), unit_power(k, u.units[1], w.e2));
  if (w.sign < 0)
    for (auto& c : r) c = -c;
  return r;
}

std::vector<IntegralVector> candidate_units(const CubicField& k, const UnitSystem& u, int depth) {
  std::vector<IntegralVector> out;
  for (const auto& w : candidate_words(depth)) out.push_back(evaluate_word(k, u, w));
  return out;
}

bool express_unit(const CubicField& k, const UnitSystem& u, const IntegralVector& x, UnitWord& out) {
  if (!is_unit(k, x)) return false;
  const Vec3d l = log_embedding(k, x);
  const auto& a = u.logs[0];
  const auto& b = u.logs[1];
  const double det = a[0] * b[1] - a[1] * b[0];
  const double e1 = (l[0] * b[1] - l[1] * b[0]) / det;
  const double e2 = (a[0] * l[1] - a[1] * l[0]) / det;
  if (std::abs(e1 - std::round(e1)) > 1e-6 || std::abs(e2 - std::round(e2)) > 1e-6) return false;
  UnitWord w{1, std::llround(e1), std::llround(e2)};
  IntegralVector v = evaluate_word(k, u, w);
  if (v == x) {
    out = w;
    return true;
  }
  for (auto& c : v) c = -c;
  if (v == x) {
    w.sign = -1;
    out = w;
    return true;
  }
  return false;
}

double unit_covering_radius(const UnitSystem& u) {
  PlanePoint p1 = to_plane(u.logs[0]), p2 = to_plane(u.logs[1]);
  double b1[2] = {p1.u, p1.v}, b2[2] = {p2.u, p2.v};
  auto d = [](const double* x, const double* y) { return x[0] * y[0] + x[1] * y[1]; };
  // Gauss reduction.
  for (int guard = 0; guard < 1000; ++guard) {
    if (d(b1, b1) > d(b2, b2)) std::swap(b1, b2);
    const double m = std::round(d(b1, b2) / d(b1, b1));
    if (m == 0) break;
    b2[0] -= m * b1[0];
    b2[1] -= m * b1[1];
  }
  if (d(b1, b2) < 0) {
    b2[0] = -b2[0];
    b2[1] = -b2[1];
  }
  const double c[2] = {b2[0] - b1[0], b2[1] - b1[1]};
  const double area = std::abs(b1[0] * b2[1] - b1[1] * b2[0]) / 2;
  return std::sqrt(d(b1, b1)) * std::sqrt(d(b2, b2)) * std::sqrt(d(c, c)) / (4 * area);
}

}  // namespace ccf

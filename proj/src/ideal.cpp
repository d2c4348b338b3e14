#include "ccf/ideal.hpp"

#include <algorithm>

#include "ccf/error.hpp"

namespace ccf {

namespace {

IntegralVector basis_vector(int i) {
  IntegralVector e{0, 0, 0};
  e[i] = 1;
  return e;
}

// A homomorphism O_K -> F_p is fixed by the images of omega_1, omega_2.
struct Homomorphism {
  std::uint64_t t1, t2;
};

std::vector<std::uint64_t> distinct_roots(const std::array<mpz_class, 3>& c, std::uint64_t p) {
  std::array<std::uint64_t, 3> cm;
  for (int i = 0; i < 3; ++i) cm[i] = mod_floor(c[i], p).get_ui();
  auto r = roots_mod_p(cm, p);
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

std::uint64_t apply(const IntegralVector& x, std::uint64_t t1, std::uint64_t t2, std::uint64_t p) {
  mpz_class v = x[0] + x[1] * static_cast<unsigned long>(t1) + x[2] * static_cast<unsigned long>(t2);
  return mod_floor(v, p).get_ui();
}

std::vector<Homomorphism> homomorphisms(const CubicField& k, std::uint64_t p) {
  std::vector<Homomorphism> out;
  const auto r1 = distinct_roots(k.charpoly_integral(basis_vector(1)), p);
  const auto r2 = distinct_roots(k.charpoly_integral(basis_vector(2)), p);
  for (std::uint64_t t1 : r1) {
    for (std::uint64_t t2 : r2) {
      const std::uint64_t img[3] = {1, t1, t2};
      bool ok = true;
      for (int i = 1; i < 3 && ok; ++i)
        for (int j = i; j < 3 && ok; ++j) {
          ok = apply(k.table(i, j), t1, t2, p) == mul_mod(img[i], img[j], p);
        }
      if (ok) out.push_back({t1, t2});
    }
  }
  return out;
}

Ideal kernel_ideal(const Homomorphism& h, std::uint64_t p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  std::vector<ZVec3> rows{{pz, 0, 0}, {-mpz_class(static_cast<unsigned long>(h.t1)), 1, 0},
                          {-mpz_class(static_cast<unsigned long>(h.t2)), 0, 1}};
  return {hermite_basis(rows)};
}

FieldElement second_generator(const CubicField& k, const Ideal& ideal, std::uint64_t p) {
  const mpz_class pz(static_cast<unsigned long>(p));
  auto works = [&](const IntegralVector& v) {
    return ideal_contains(ideal, v) && ideal_from_generators(k, {{pz, 0, 0}, v}) == ideal;
  };
  // a - r with r its residue: the form used in printed tables.
  if (auto a = k.to_integral(FieldElement::generator())) {
    // Image of a under the map with kernel `ideal`.
    mpz_class t1 = mod_floor(-ideal.hnf[1][0], pz), t2 = mod_floor(-ideal.hnf[2][0], pz);
    mpz_class r = mod_floor((*a)[0] + (*a)[1] * t1 + (*a)[2] * t2, pz);
    IntegralVector v = *a;
    v[0] -= r;
    if (works(v)) return k.from_integral(v);
  }
  for (int bound = 1; bound <= 8; ++bound) {
    for (int x1 = -bound; x1 <= bound; ++x1)
      for (int x2 = -bound; x2 <= bound; ++x2) {
        if (std::max(std::abs(x1), std::abs(x2)) != bound) continue;
        IntegralVector v{0, x1, x2};
        v[0] = mod_floor(ideal.hnf[1][0] * x1 + ideal.hnf[2][0] * x2, pz);
        for (const mpz_class& shift : std::array<mpz_class, 3>{0, pz, -pz}) {
          IntegralVector w = v;
          w[0] += shift;
          if (works(w)) return k.from_integral(w);
        }
      }
  }
  throw Error(ErrorKind::internal, "no two-element form found for a prime above " + std::to_string(p));
}

}  // namespace

std::string_view to_string(Splitting s) {
  switch (s) {
    case Splitting::split: return "split";
    case Splitting::inert: return "inert";
    case Splitting::ramified: return "ramified";
  }
  return "unknown";
}

Ideal unit_ideal() { return {ZMat3{ZVec3{1, 0, 0}, ZVec3{0, 1, 0}, ZVec3{0, 0, 1}}}; }

Ideal ideal_from_generators(const CubicField& k, const std::vector<IntegralVector>& gens) {
  std::vector<ZVec3> rows;
  for (const auto& g : gens) {
    if (g[0] == 0 && g[1] == 0 && g[2] == 0) continue;
    for (int j = 0; j < 3; ++j) rows.push_back(k.mul_integral(g, basis_vector(j)));
  }
  if (rows.empty()) throw Error(ErrorKind::domain, "zero ideal");
  return {hermite_basis(rows)};
}

Ideal principal_ideal(const CubicField& k, const IntegralVector& x) { return ideal_from_generators(k, {x}); }

Ideal principal_ideal(const CubicField& k, const FieldElement& x) {
  auto v = k.to_integral(x);
  if (!v) throw Error(ErrorKind::domain, "element is not integral: " + format_element(x));
  return principal_ideal(k, *v);
}

Ideal ideal_mul(const CubicField& k, const Ideal& a, const Ideal& b) {
  std::vector<ZVec3> rows;
  for (const auto& x : a.hnf)
    for (const auto& y : b.hnf) rows.push_back(k.mul_integral(x, y));
  return {hermite_basis(rows)};
}

bool ideal_contains(const Ideal& a, const IntegralVector& x) {
  ZVec3 coeffs;
  return solve_hermite(a.hnf, x, coeffs);
}

bool ideal_contains(const CubicField& k, const Ideal& a, const FieldElement& x) {
  auto v = k.to_integral(x);
  if (!v) throw Error(ErrorKind::domain, "element is not integral: " + format_element(x));
  return ideal_contains(a, *v);
}

bool is_ideal(const CubicField& k, const ZMat3& lattice) {
  for (const auto& row : lattice)
    for (int j = 1; j < 3; ++j) {
      ZVec3 coeffs;
      if (!solve_hermite(lattice, k.mul_integral(row, basis_vector(j)), coeffs)) return false;
    }
  return true;
}

std::vector<PrimeIdeal> decompose_prime(const CubicField& k, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::domain, std::to_string(p) + " is not prime");
  const auto homs = homomorphisms(k, p);
  std::vector<PrimeIdeal> out;
  const mpz_class pz(static_cast<unsigned long>(p));
  if (homs.empty()) {
    PrimeIdeal pr;
    pr.ideal = {ZMat3{ZVec3{pz, 0, 0}, ZVec3{0, pz, 0}, ZVec3{0, 0, pz}}};
    pr.p = p;
    pr.residue_degree = 3;
    pr.alpha = FieldElement::from_integer(pz);
    out.push_back(pr);
    return out;
  }
  const bool ramified = homs.size() == 1;
  if (homs.size() != 1 && homs.size() != 3) {
    throw Error(ErrorKind::internal, "unexpected splitting of " + std::to_string(p));
  }
  if (ramified != mpz_divisible_ui_p(k.field_discriminant().get_mpz_t(), p)) {
    throw Error(ErrorKind::internal, "ramification of " + std::to_string(p) + " disagrees with the discriminant");
  }
  for (const auto& h : homs) {
    PrimeIdeal pr;
    pr.ideal = kernel_ideal(h, p);
    pr.p = p;
    pr.ramification = ramified ? 3 : 1;
    out.push_back(pr);
  }
  std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (a.ideal.hnf[i][j] != b.ideal.hnf[i][j]) return a.ideal.hnf[i][j] < b.ideal.hnf[i][j];
    return false;
  });
  for (auto& pr : out) pr.alpha = second_generator(k, pr.ideal, p);
  return out;
}

Splitting splitting_type(const CubicField& k, std::uint64_t p) {
  const auto homs = homomorphisms(k, p);
  if (homs.empty()) return Splitting::inert;
  return homs.size() == 1 ? Splitting::ramified : Splitting::split;
}

bool as_degree_one_prime(const CubicField& k, const Ideal& a, PrimeIdeal& out) {
  const mpz_class n = a.norm();
  if (!n.fits_ulong_p() || !is_prime(n.get_ui())) return false;
  if (a.hnf[0][0] != n || !is_ideal(k, a.hnf)) return false;
  const std::uint64_t p = n.get_ui();
  out.ideal = a;
  out.p = p;
  out.residue_degree = 1;
  out.ramification = mpz_divisible_ui_p(k.field_discriminant().get_mpz_t(), p) ? 3 : 1;
  out.alpha = second_generator(k, a, p);
  return true;
}

std::string ideal_str(const PrimeIdeal& p) {
  if (p.residue_degree == 3) return "(" + std::to_string(p.p) + ")";
  return "(" + std::to_string(p.p) + ", " + format_element(p.alpha) + ")";
}

ResidueRing::ResidueRing(const CubicField& k, const PrimeIdeal& q, int exponent) : p_(q.p) {
  if (q.residue_degree != 1 || q.ramification != 1) {
    throw Error(ErrorKind::unsupported_modulus, "residue rings need a degree-one unramified prime, got " + ideal_str(q));
  }
  if (exponent < 1 || exponent > 2) throw Error(ErrorKind::unsupported_modulus, "exponent must be 1 or 2");
  ideal_ = exponent == 1 ? q.ideal : ideal_mul(k, q.ideal, q.ideal);
  modulus_ = exponent == 1 ? p_ : p_ * p_;
  const mpz_class m(static_cast<unsigned long>(modulus_));
  if (ideal_.hnf[0][0] != m || ideal_.hnf[1][1] != 1 || ideal_.hnf[2][2] != 1) {
    throw Error(ErrorKind::internal, "residue ring is not cyclic");
  }
  t1_ = mod_floor(-ideal_.hnf[1][0], m);
  t2_ = mod_floor(-ideal_.hnf[2][0], m);
  group_order_ = modulus_ / p_ * (p_ - 1);
  group_factors_ = factorize(group_order_);
}

std::uint64_t ResidueRing::reduce(const IntegralVector& x) const {
  mpz_class v = x[0] + x[1] * t1_ + x[2] * t2_;
  return mod_floor(v, mpz_class(static_cast<unsigned long>(modulus_))).get_ui();
}

std::uint64_t ResidueRing::reduce(const CubicField& k, const FieldElement& x) const {
  auto v = k.to_integral(x);
  if (!v) throw Error(ErrorKind::domain, "element is not integral: " + format_element(x));
  return reduce(*v);
}

std::uint64_t ResidueRing::order_of_residue(std::uint64_t r) const {
  if (r % p_ == 0) throw Error(ErrorKind::not_a_unit, "element is not a unit modulo the ideal");
  return order_mod(r, modulus_, group_order_, group_factors_);
}

std::uint64_t ResidueRing::multiplicative_order(const IntegralVector& x) const { return order_of_residue(reduce(x)); }

}  // namespace ccf

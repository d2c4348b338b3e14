#include "ccf/field.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"

namespace ccf {

namespace {

QVec3 power_mul(const CubicPolynomial& f, const QVec3& x, const QVec3& y) {
  std::array<mpq_class, 5> p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i + j] += x[i] * y[j];
  const mpq_class c2(f.c2), c1(f.c1), c0(f.c0);
  for (int k = 4; k >= 3; --k) {
    mpq_class t = p[k];
    if (t == 0) continue;
    p[k - 1] -= c2 * t;
    p[k - 2] -= c1 * t;
    p[k - 3] -= c0 * t;
  }
  QVec3 r{p[0], p[1], p[2]};
  for (auto& c : r) c.canonicalize();
  return r;
}

// Rows x*1, x*a, x*a^2 in power coordinates.
QMat3 power_mult_matrix(const CubicPolynomial& f, const QVec3& x) {
  QMat3 m;
  m[0] = x;
  m[1] = power_mul(f, x, {0, 1, 0});
  m[2] = power_mul(f, m[1], {0, 1, 0});
  return m;
}

mpq_class power_trace(const CubicPolynomial& f, const QVec3& x) {
  mpq_class t = 3 * x[0] - mpq_class(f.c2) * x[1] + mpq_class(f.c2 * f.c2 - 2 * f.c1) * x[2];
  t.canonicalize();
  return t;
}

bool all_integral(const QVec3& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

using Table = std::array<std::array<ZVec3, 3>, 3>;

Table multiplication_table(const CubicPolynomial& f, const QMat3& basis, const QMat3& basis_inv) {
  Table t;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      QVec3 c = mul(power_mul(f, basis[i], basis[j]), basis_inv);
      if (!all_integral(c)) throw Error(ErrorKind::internal, "basis does not span an order");
      for (int k = 0; k < 3; ++k) t[i][j][k] = c[k].get_num();
      t[j][i] = t[i][j];
    }
  }
  return t;
}

std::vector<std::uint64_t> mul_mod_p(const Table& t, const std::vector<std::uint64_t>& x,
                                     const std::vector<std::uint64_t>& y, std::uint64_t p) {
  std::vector<std::uint64_t> r(3, 0);
  for (int i = 0; i < 3; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < 3; ++j) {
      if (y[j] == 0) continue;
      std::uint64_t xy = mul_mod(x[i], y[j], p);
      for (int k = 0; k < 3; ++k) {
        std::uint64_t tk = mod_floor(t[i][j][k], p).get_ui();
        r[k] = (r[k] + mul_mod(xy, tk, p)) % p;
      }
    }
  }
  return r;
}

ZMat3 lattice_with_p(const std::vector<std::vector<std::uint64_t>>& kernel, std::uint64_t p) {
  std::vector<ZVec3> gens;
  for (int i = 0; i < 3; ++i) {
    ZVec3 e{0, 0, 0};
    e[i] = static_cast<unsigned long>(p);
    gens.push_back(e);
  }
  for (const auto& k : kernel) {
    gens.push_back({mpz_class(static_cast<unsigned long>(k[0])), mpz_class(static_cast<unsigned long>(k[1])),
                    mpz_class(static_cast<unsigned long>(k[2]))});
  }
  return hermite_basis(gens);
}

// One round-two step at p. Returns true and updates `basis` when the order
// is not p-maximal.
bool enlarge_at(const CubicPolynomial& f, QMat3& basis, std::uint64_t p) {
  const QMat3 basis_inv = inverse(basis);
  const Table t = multiplication_table(f, basis, basis_inv);

  // p-radical modulo pO.
  std::vector<std::vector<std::uint64_t>> rows(3, std::vector<std::uint64_t>(3, 0));
  if (p > 3) {
    std::array<mpz_class, 3> tr;
    for (int k = 0; k < 3; ++k) tr[k] = power_trace(f, basis[k]).get_num();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        mpz_class s = 0;
        for (int k = 0; k < 3; ++k) s += t[i][j][k] * tr[k];
        rows[i][j] = mod_floor(s, p).get_ui();
      }
  } else {
    std::uint64_t power = p;
    while (power < 3) power *= p;
    for (int i = 0; i < 3; ++i) {
      std::vector<std::uint64_t> e(3, 0);
      e[i] = 1;
      std::vector<std::uint64_t> acc = e;
      for (std::uint64_t k = 1; k < power; ++k) acc = mul_mod_p(t, acc, e, p);
      rows[i] = acc;
    }
  }
  const ZMat3 radical = lattice_with_p(left_kernel_mod_p(rows, p), p);
  const QMat3 radical_inv = inverse(to_rational(radical));

  // Multipliers: y with y * radical in p * radical.
  std::vector<std::vector<std::uint64_t>> action(3, std::vector<std::uint64_t>(9, 0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      QVec3 prod{0, 0, 0};
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) prod[k] += radical[j][l] * t[i][l][k];
      QVec3 c = mul(prod, radical_inv);
      if (!all_integral(c)) throw Error(ErrorKind::internal, "p-radical is not an ideal");
      for (int k = 0; k < 3; ++k) action[i][3 * j + k] = mod_floor(c[k].get_num(), p).get_ui();
    }
  }
  const auto kernel = left_kernel_mod_p(action, p);
  if (kernel.empty()) return false;

  const ZMat3 h = lattice_with_p(kernel, p);
  QMat3 next;
  for (int i = 0; i < 3; ++i) {
    next[i] = mul(QVec3{mpq_class(h[i][0]), mpq_class(h[i][1]), mpq_class(h[i][2])}, basis);
    for (auto& c : next[i]) {
      c /= static_cast<unsigned long>(p);
      c.canonicalize();
    }
  }
  basis = next;
  return true;
}

mpz_class isqrt_exact(const mpz_class& n, bool& exact) {
  if (n < 0) {
    exact = false;
    return 0;
  }
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  exact = r * r == n;
  return r;
}

Real det3(const std::array<std::array<Real, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Solve W c = s where W[i][k] = sigma_i(omega_k).
std::array<Real, 3> solve_embedding_system(const std::array<std::array<Real, 3>, 3>& w,
                                           const std::array<Real, 3>& s) {
  Real d = det3(w);
  std::array<Real, 3> c;
  for (int k = 0; k < 3; ++k) {
    auto m = w;
    for (int i = 0; i < 3; ++i) m[i][k] = s[i];
    c[k] = det3(m) / d;
  }
  return c;
}

}  // namespace

CubicField CubicField::build(const CubicPolynomial& poly) {
  if (has_rational_root(poly)) throw Error(ErrorKind::not_a_field, poly.str() + " is reducible over Q");
  CubicField k;
  k.poly_ = poly;
  k.poly_disc_ = poly.discriminant();
  bool square = false;
  isqrt_exact(k.poly_disc_, square);
  if (!square) {
    throw Error(ErrorKind::not_cyclic, "discriminant " + k.poly_disc_.get_str() + " of " + poly.str() + " is not a square");
  }
  if (!k.poly_disc_.fits_ulong_p() || k.poly_disc_ > mpz_class("9223372036854775807")) {
    throw Error(ErrorKind::domain, "discriminant too large to factor: " + k.poly_disc_.get_str());
  }

  QMat3 basis{};
  for (int i = 0; i < 3; ++i) basis[i][i] = 1;
  for (const auto& [p, e] : factorize(k.poly_disc_.get_ui())) {
    if (e < 2) continue;
    while (enlarge_at(poly, basis, p)) {
    }
  }

  mpz_class den = 1;
  for (const auto& row : basis)
    for (const auto& c : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<ZVec3> gens;
  for (const auto& row : basis) {
    ZVec3 v;
    for (int j = 0; j < 3; ++j) v[j] = mpq_class(row[j] * den).get_num();
    gens.push_back(v);
  }
  k.basis_num_ = hermite_basis(gens);
  k.basis_den_ = den;
  if (k.basis_num_[0][0] != den) throw Error(ErrorKind::internal, "integral basis does not start with 1");

  k.index_ = den * den * den / determinant(k.basis_num_);
  k.field_disc_ = k.poly_disc_ / (k.index_ * k.index_);
  mpz_class f = isqrt_exact(k.field_disc_, square);
  if (!square) throw Error(ErrorKind::not_cyclic, "field discriminant " + k.field_disc_.get_str() + " is not a square");
  k.conductor_ = f.get_ui();

  const QMat3 ib = k.integral_basis();
  k.basis_inv_ = inverse(ib);
  k.mult_table_ = multiplication_table(poly, ib, k.basis_inv_);

  k.roots_ = real_roots(poly, kEmbeddingBits);
  for (int i = 0; i < 3; ++i) {
    Real r2 = k.roots_[i] * k.roots_[i];
    for (int b = 0; b < 3; ++b) {
      k.basis_emb_[i][b] = Real(ib[b][0], kEmbeddingBits) + Real(ib[b][1], kEmbeddingBits) * k.roots_[i] +
                           Real(ib[b][2], kEmbeddingBits) * r2;
    }
  }

  // sigma(a) is the element whose i-th embedding is root i+1.
  std::array<Real, 3> shifted{k.roots_[1], k.roots_[2], k.roots_[0]};
  std::array<Real, 3> c = solve_embedding_system(k.basis_emb_, shifted);
  IntegralVector sv{c[0].round(), c[1].round(), c[2].round()};
  k.sigma_a_ = k.from_integral(sv);
  {
    const FieldElement& s = k.sigma_a_;
    FieldElement val = k.add(k.mul(k.add(k.mul(k.add(s, FieldElement::from_integer(poly.c2)), s),
                                         FieldElement::from_integer(poly.c1)),
                                   s),
                             FieldElement::from_integer(poly.c0));
    if (!val.is_zero()) throw Error(ErrorKind::not_cyclic, "no Galois automorphism found for " + poly.str());
  }
  for (int i = 0; i < 3; ++i) {
    auto v = k.to_integral(k.sigma(k.from_integral({i == 0 ? 1 : 0, i == 1 ? 1 : 0, i == 2 ? 1 : 0})));
    if (!v) throw Error(ErrorKind::internal, "sigma does not preserve the maximal order");
    k.sigma_matrix_[i] = *v;
  }
  return k;
}

CubicField CubicField::from_conductor(std::uint64_t f) {
  CubicPolynomial poly;
  if (f == 9) {
    poly = {0, -3, 1};
  } else if (f % 6 == 1 && is_prime(f)) {
    const PeriodParameters pp = decompose_conductor(f);
    mpz_class num = mpz_class(static_cast<unsigned long>(f)) * (pp.L + 3) - 1;
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 27)) throw Error(ErrorKind::internal, "period polynomial not integral");
    poly = {1, -mpz_class(static_cast<unsigned long>((f - 1) / 3)), -(num / 27)};
  } else {
    throw Error(ErrorKind::invalid_conductor,
                "conductor must be 9 or a prime == 1 (mod 6), got " + std::to_string(f));
  }
  CubicField k = build(poly);
  if (k.conductor() != f) {
    throw Error(ErrorKind::internal, "period polynomial for " + std::to_string(f) + " has conductor " +
                                         std::to_string(k.conductor()));
  }
  return k;
}

QMat3 CubicField::integral_basis() const {
  QMat3 b;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      b[i][j] = mpq_class(basis_num_[i][j], basis_den_);
      b[i][j].canonicalize();
    }
  return b;
}

FieldElement CubicField::add(const FieldElement& x, const FieldElement& y) const {
  FieldElement r;
  for (int i = 0; i < 3; ++i) {
    r.coords[i] = x.coords[i] + y.coords[i];
    r.coords[i].canonicalize();
  }
  return r;
}

FieldElement CubicField::sub(const FieldElement& x, const FieldElement& y) const { return add(x, neg(y)); }

FieldElement CubicField::neg(const FieldElement& x) const {
  FieldElement r;
  for (int i = 0; i < 3; ++i) r.coords[i] = -x.coords[i];
  return r;
}

FieldElement CubicField::mul(const FieldElement& x, const FieldElement& y) const {
  return {power_mul(poly_, x.coords, y.coords)};
}

FieldElement CubicField::inv(const FieldElement& x) const {
  if (x.is_zero()) throw Error(ErrorKind::division_by_zero, "inverse of zero");
  QMat3 m = power_mult_matrix(poly_, x.coords);
  return {ccf::mul(QVec3{1, 0, 0}, inverse(m))};
}

FieldElement CubicField::pow(const FieldElement& x, std::int64_t e) const {
  FieldElement base = e < 0 ? inv(x) : x;
  std::uint64_t n = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  FieldElement r = FieldElement::from_integer(1);
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n > 0) base = mul(base, base);
  }
  return r;
}

mpq_class CubicField::norm(const FieldElement& x) const { return determinant(power_mult_matrix(poly_, x.coords)); }

mpq_class CubicField::trace(const FieldElement& x) const { return power_trace(poly_, x.coords); }

std::array<mpq_class, 3> CubicField::charpoly(const FieldElement& x) const {
  QMat3 m = power_mult_matrix(poly_, x.coords);
  mpq_class tr = m[0][0] + m[1][1] + m[2][2];
  mpq_class minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                     m[1][1] * m[2][2] - m[1][2] * m[2][1];
  std::array<mpq_class, 3> c{-tr, minors, -determinant(m)};
  for (auto& v : c) v.canonicalize();
  return c;
}

std::optional<IntegralVector> CubicField::to_integral(const FieldElement& x) const {
  QVec3 c = ccf::mul(x.coords, basis_inv_);
  if (!all_integral(c)) return std::nullopt;
  return IntegralVector{c[0].get_num(), c[1].get_num(), c[2].get_num()};
}

bool CubicField::is_integral(const FieldElement& x) const { return to_integral(x).has_value(); }

FieldElement CubicField::from_integral(const IntegralVector& v) const {
  FieldElement r;
  for (int j = 0; j < 3; ++j) {
    mpz_class s = v[0] * basis_num_[0][j] + v[1] * basis_num_[1][j] + v[2] * basis_num_[2][j];
    r.coords[j] = mpq_class(s, basis_den_);
    r.coords[j].canonicalize();
  }
  return r;
}

IntegralVector CubicField::mul_integral(const IntegralVector& x, const IntegralVector& y) const {
  IntegralVector r{0, 0, 0};
  mpz_class xy;
  for (int i = 0; i < 3; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < 3; ++j) {
      if (y[j] == 0) continue;
      xy = x[i] * y[j];
      for (int k = 0; k < 3; ++k) r[k] += xy * mult_table_[i][j][k];
    }
  }
  return r;
}

IntegralVector CubicField::pow_integral(IntegralVector x, std::uint64_t e) const {
  IntegralVector r{1, 0, 0};
  while (e > 0) {
    if (e & 1) r = mul_integral(r, x);
    e >>= 1;
    if (e > 0) x = mul_integral(x, x);
  }
  return r;
}

ZMat3 CubicField::mult_matrix(const IntegralVector& x) const {
  ZMat3 m;
  for (int j = 0; j < 3; ++j) {
    IntegralVector e{0, 0, 0};
    e[j] = 1;
    m[j] = mul_integral(x, e);
  }
  return m;
}

mpz_class CubicField::norm_integral(const IntegralVector& x) const { return determinant(mult_matrix(x)); }

std::array<mpz_class, 3> CubicField::charpoly_integral(const IntegralVector& x) const {
  ZMat3 m = mult_matrix(x);
  mpz_class tr = m[0][0] + m[1][1] + m[2][2];
  mpz_class minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
                     m[1][1] * m[2][2] - m[1][2] * m[2][1];
  return {-tr, minors, -determinant(m)};
}

std::array<Real, 3> CubicField::real_embeddings(const FieldElement& x, int digits) const {
  mpfr_prec_t size_bits = 0;
  for (const auto& c : x.coords) {
    size_bits = std::max<mpfr_prec_t>(size_bits, static_cast<mpfr_prec_t>(mpz_sizeinbase(c.get_num_mpz_t(), 2) +
                                                                          mpz_sizeinbase(c.get_den_mpz_t(), 2)));
  }
  const mpfr_prec_t bits = digits_to_bits(digits) + size_bits + 16;
  std::array<Real, 3> roots = bits <= kEmbeddingBits ? roots_ : real_roots(poly_, bits);
  const mpfr_prec_t work = std::max(bits, kEmbeddingBits);
  std::array<Real, 3> out;
  for (int i = 0; i < 3; ++i) {
    out[i] = Real(x.coords[0], work) + Real(x.coords[1], work) * roots[i] +
             Real(x.coords[2], work) * roots[i] * roots[i];
  }
  return out;
}

std::array<Real, 3> CubicField::embed_integral(const IntegralVector& x, mpfr_prec_t bits) const {
  std::array<Real, 3> out;
  Real term(bits);
  for (int i = 0; i < 3; ++i) {
    out[i] = Real(bits);
    for (int k = 0; k < 3; ++k) {
      if (x[k] == 0) continue;
      mpfr_mul_z(term.get(), basis_emb_[i][k].get(), x[k].get_mpz_t(), MPFR_RNDN);
      mpfr_add(out[i].get(), out[i].get(), term.get(), MPFR_RNDN);
    }
  }
  return out;
}

FieldElement CubicField::sigma(const FieldElement& x) const {
  FieldElement s2 = mul(sigma_a_, sigma_a_);
  FieldElement r;
  for (int j = 0; j < 3; ++j) {
    r.coords[j] = x.coords[0] * (j == 0 ? 1 : 0) + x.coords[1] * sigma_a_.coords[j] + x.coords[2] * s2.coords[j];
    r.coords[j].canonicalize();
  }
  return r;
}

IntegralVector CubicField::sigma_integral(const IntegralVector& x) const { return ccf::mul(x, sigma_matrix_); }

std::vector<FieldElement> roots_in_field(const CubicField& field, const CubicPolynomial& g) {
  std::vector<FieldElement> found;
  if (g.discriminant() <= 0) {
    // A root in a totally real field forces all conjugates real; a double
    // root means g is reducible.
    return found;
  }
  const mpfr_prec_t bits = CubicField::kEmbeddingBits;
  std::array<Real, 3> s = real_roots(g, bits);
  std::array<int, 3> perm{0, 1, 2};
  do {
    std::array<Real, 3> target{s[perm[0]], s[perm[1]], s[perm[2]]};
    std::array<Real, 3> c = solve_embedding_system(field.basis_embeddings(), target);
    IntegralVector v{c[0].round(), c[1].round(), c[2].round()};
    FieldElement beta = field.from_integral(v);
    FieldElement val = field.add(
        field.mul(field.add(field.mul(field.add(beta, FieldElement::from_integer(g.c2)), beta),
                            FieldElement::from_integer(g.c1)),
                  beta),
        FieldElement::from_integer(g.c0));
    if (val.is_zero() && std::find(found.begin(), found.end(), beta) == found.end()) found.push_back(beta);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

bool is_same_field(const CubicField& field, const CubicPolynomial& g) {
  if (has_rational_root(g)) return false;
  return !roots_in_field(field, g).empty();
}

std::array<std::string, 3> to_rational_strings(const FieldElement& x) {
  std::array<std::string, 3> out;
  for (int i = 0; i < 3; ++i) {
    mpq_class c = x.coords[i];
    c.canonicalize();
    out[i] = c.get_num().get_str() + "/" + c.get_den().get_str();
  }
  return out;
}

FieldElement from_rational_strings(const std::array<std::string, 3>& parts) {
  FieldElement x;
  for (int i = 0; i < 3; ++i) {
    const std::string& s = parts[i];
    std::size_t slash = s.find('/');
    mpz_class num, den = 1;
    std::string num_str = s.substr(0, slash);
    if (num_str.empty() || num.set_str(num_str, 10) != 0) throw Error(ErrorKind::parse, "bad rational '" + s + "'");
    if (slash != std::string::npos) {
      std::string den_str = s.substr(slash + 1);
      if (den_str.empty() || den_str[0] == '-' || den_str[0] == '+' || den.set_str(den_str, 10) != 0) {
        throw Error(ErrorKind::parse, "bad rational '" + s + "'");
      }
      if (den == 0) throw Error(ErrorKind::parse, "zero denominator in '" + s + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (q.get_den() != den || q.get_num() != num) throw Error(ErrorKind::parse, "rational '" + s + "' is not in lowest terms");
    x.coords[i] = q;
  }
  return x;
}

std::string format_element(const FieldElement& x) {
  static const char* const kMonomial[3] = {"", "a", "a^2"};
  std::string out;
  for (int i = 2; i >= 0; --i) {
    mpq_class c = x.coords[i];
    if (c == 0) continue;
    bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (c != 1 || i == 0) out += c.get_str();
    out += kMonomial[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace ccf

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "ccf/linalg.hpp"
#include "ccf/polynomial.hpp"
#include "ccf/real.hpp"

namespace ccf {

/// Element of K stored over the power basis {1, a, a^2}.
struct FieldElement {
  QVec3 coords;

  static FieldElement from_integer(const mpz_class& n) { return {{mpq_class(n), 0, 0}}; }
  static FieldElement generator() { return {{0, 1, 0}}; }

  bool is_zero() const { return coords[0] == 0 && coords[1] == 0 && coords[2] == 0; }
  friend bool operator==(const FieldElement& x, const FieldElement& y) { return x.coords == y.coords; }
};

/// Coordinates over the integral basis of the maximal order.
using IntegralVector = ZVec3;

/// A cyclic cubic field with its maximal order. Immutable once built.
class CubicField {
 public:
  /// Precision of the cached real roots and basis embeddings.
  static constexpr mpfr_prec_t kEmbeddingBits = 1024;

  static CubicField build(const CubicPolynomial& poly);
  static CubicField from_conductor(std::uint64_t f);

  const CubicPolynomial& poly() const { return poly_; }
  std::uint64_t conductor() const { return conductor_; }
  const mpz_class& poly_discriminant() const { return poly_disc_; }
  const mpz_class& field_discriminant() const { return field_disc_; }
  const mpz_class& index() const { return index_; }

  /// Rows are the integral basis elements in power-basis coordinates;
  /// the first row is 1.
  QMat3 integral_basis() const;
  const ZMat3& basis_numerators() const { return basis_num_; }
  const mpz_class& basis_denominator() const { return basis_den_; }
  /// omega_i * omega_j = sum_k table(i, j)[k] * omega_k.
  const IntegralVector& table(int i, int j) const { return mult_table_[i][j]; }

  FieldElement add(const FieldElement& x, const FieldElement& y) const;
  FieldElement sub(const FieldElement& x, const FieldElement& y) const;
  FieldElement neg(const FieldElement& x) const;
  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  FieldElement inv(const FieldElement& x) const;
  FieldElement pow(const FieldElement& x, std::int64_t e) const;

  mpq_class norm(const FieldElement& x) const;
  mpq_class trace(const FieldElement& x) const;
  /// Characteristic polynomial x^3 + c2 x^2 + c1 x + c0 as {c2, c1, c0}.
  std::array<mpq_class, 3> charpoly(const FieldElement& x) const;

  bool is_integral(const FieldElement& x) const;
  std::optional<IntegralVector> to_integral(const FieldElement& x) const;
  FieldElement from_integral(const IntegralVector& v) const;

  IntegralVector mul_integral(const IntegralVector& x, const IntegralVector& y) const;
  IntegralVector pow_integral(IntegralVector x, std::uint64_t e) const;
  mpz_class norm_integral(const IntegralVector& x) const;
  /// Matrix of multiplication by x on the integral basis (row j = x*omega_j).
  ZMat3 mult_matrix(const IntegralVector& x) const;
  /// Characteristic polynomial of an integral element, integer coefficients.
  std::array<mpz_class, 3> charpoly_integral(const IntegralVector& x) const;

  /// Images of x under the three real embeddings, ordered by the embedded
  /// root a ascending, correct to `digits` decimal digits.
  std::array<Real, 3> real_embeddings(const FieldElement& x, int digits) const;
  const std::array<Real, 3>& roots() const { return roots_; }
  /// sigma_i(omega_k) at kEmbeddingBits.
  const std::array<std::array<Real, 3>, 3>& basis_embeddings() const { return basis_emb_; }
  /// Embeddings of an integral vector at `bits` precision.
  std::array<Real, 3> embed_integral(const IntegralVector& x, mpfr_prec_t bits) const;

  /// Generator of Gal(K/Q), sending the embedding order i to i + 1.
  FieldElement sigma(const FieldElement& x) const;
  IntegralVector sigma_integral(const IntegralVector& x) const;

 private:
  CubicField() = default;

  CubicPolynomial poly_;
  std::uint64_t conductor_ = 0;
  mpz_class poly_disc_, field_disc_, index_;
  ZMat3 basis_num_;
  mpz_class basis_den_;
  QMat3 basis_inv_;  // power coords -> integral coords
  std::array<std::array<IntegralVector, 3>, 3> mult_table_;
  std::array<Real, 3> roots_;
  std::array<std::array<Real, 3>, 3> basis_emb_;
  FieldElement sigma_a_;
  ZMat3 sigma_matrix_;  // action of sigma on integral coordinates (row i = sigma(omega_i))
};

/// Roots of `g` lying in K (exact, verified by substitution).
std::vector<FieldElement> roots_in_field(const CubicField& field, const CubicPolynomial& g);

/// True iff g is irreducible and has a root in K.
bool is_same_field(const CubicField& field, const CubicPolynomial& g);

/// Coordinates as "p/q" strings, denominators positive, lowest terms.
std::array<std::string, 3> to_rational_strings(const FieldElement& x);
FieldElement from_rational_strings(const std::array<std::string, 3>& parts);

/// Paper notation over a, e.g. "2/3a^2 - 3a - 8/3".
std::string format_element(const FieldElement& x);

}  // namespace ccf

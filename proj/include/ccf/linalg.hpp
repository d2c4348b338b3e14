#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace ccf {

using ZVec3 = std::array<mpz_class, 3>;
using ZMat3 = std::array<ZVec3, 3>;
using QVec3 = std::array<mpq_class, 3>;
using QMat3 = std::array<QVec3, 3>;

/// Hermite basis of the full-rank lattice spanned by `generators`, in lower
/// triangular form: row i has zeros after column i, a positive diagonal, and
/// entries left of the diagonal reduced into [0, pivot of that column).
/// Throws internal error when the rank is below 3.
ZMat3 hermite_basis(std::vector<ZVec3> generators);

mpz_class determinant(const ZMat3& m);
mpq_class determinant(const QMat3& m);
QMat3 inverse(const QMat3& m);

/// Row vector times matrix.
QVec3 mul(const QVec3& v, const QMat3& m);
ZVec3 mul(const ZVec3& v, const ZMat3& m);
QMat3 to_rational(const ZMat3& m);

/// Solve v = x * H for lower-triangular Hermite H; nullopt-like: returns
/// false if x is not integral.
bool solve_hermite(const ZMat3& h, const ZVec3& v, ZVec3& x);

/// Vectors y with sum_i y_i * rows[i] == 0 (mod p): a basis of the left kernel.
std::vector<std::vector<std::uint64_t>> left_kernel_mod_p(std::vector<std::vector<std::uint64_t>> rows,
                                                          std::uint64_t p);

mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

}  // namespace ccf

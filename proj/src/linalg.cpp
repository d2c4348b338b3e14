#include "ccf/linalg.hpp"

#include <algorithm>
#include <utility>

#include "ccf/core_arith.hpp"
#include "ccf/error.hpp"

namespace ccf {

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace {

void axpy(ZVec3& dst, const mpz_class& k, const ZVec3& src) {
  for (int c = 0; c < 3; ++c) dst[c] -= k * src[c];
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

ZMat3 hermite_basis(std::vector<ZVec3> rows) {
  ZMat3 h;
  for (int col = 2; col >= 0; --col) {
    // Euclid on column `col` across the remaining rows.
    for (;;) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (rows[i][col] == 0) continue;
        if (best < 0 || abs(rows[i][col]) < abs(rows[best][col])) best = i;
      }
      if (best < 0) throw Error(ErrorKind::internal, "lattice is not of full rank");
      bool done = true;
      for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
        if (i == best || rows[i][col] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[best][col].get_mpz_t());
        axpy(rows[i], q, rows[best]);
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        h[col] = rows[best];
        rows.erase(rows.begin() + best);
        break;
      }
    }
    if (h[col][col] < 0) {
      for (auto& x : h[col]) x = -x;
    }
    // Remaining rows now vanish in this column; drop zero rows.
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const ZVec3& r) { return r[0] == 0 && r[1] == 0 && r[2] == 0; }),
               rows.end());
  }
  for (int col = 1; col >= 0; --col) {
    for (int row = col + 1; row < 3; ++row) {
      mpz_class q = floor_div(h[row][col], h[col][col]);
      if (q != 0) axpy(h[row], q, h[col]);
    }
  }
  return h;
}

mpz_class determinant(const ZMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

mpq_class determinant(const QMat3& m) {
  mpq_class d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  d.canonicalize();
  return d;
}

QMat3 inverse(const QMat3& m) {
  mpq_class d = determinant(m);
  if (d == 0) throw Error(ErrorKind::division_by_zero, "singular matrix");
  QMat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = (m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]) / d;
      r[i][j].canonicalize();
    }
  }
  return r;
}

QVec3 mul(const QVec3& v, const QMat3& m) {
  QVec3 r;
  for (int j = 0; j < 3; ++j) {
    r[j] = v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j];
    r[j].canonicalize();
  }
  return r;
}

ZVec3 mul(const ZVec3& v, const ZMat3& m) {
  ZVec3 r;
  for (int j = 0; j < 3; ++j) r[j] = v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j];
  return r;
}

QMat3 to_rational(const ZMat3& m) {
  QMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j];
  return r;
}

bool solve_hermite(const ZMat3& h, const ZVec3& v, ZVec3& x) {
  ZVec3 rest = v;
  for (int col = 2; col >= 0; --col) {
    if (!mpz_divisible_p(rest[col].get_mpz_t(), h[col][col].get_mpz_t())) return false;
    x[col] = rest[col] / h[col][col];
    axpy(rest, x[col], h[col]);
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> left_kernel_mod_p(std::vector<std::vector<std::uint64_t>> rows,
                                                          std::uint64_t p) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  std::vector<std::vector<std::uint64_t>> ident(m, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    ident[i][i] = 1;
    for (auto& x : rows[i]) x %= p;
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < n && pivot_row < m; ++col) {
    std::size_t sel = pivot_row;
    while (sel < m && rows[sel][col] == 0) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[pivot_row]);
    std::swap(ident[sel], ident[pivot_row]);
    std::uint64_t inv = inv_mod(rows[pivot_row][col], p);
    for (auto& x : rows[pivot_row]) x = mul_mod(x, inv, p);
    for (auto& x : ident[pivot_row]) x = mul_mod(x, inv, p);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pivot_row || rows[r][col] == 0) continue;
      std::uint64_t k = rows[r][col];
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = (rows[r][c] + p - mul_mod(k, rows[pivot_row][c], p)) % p;
      for (std::size_t c = 0; c < m; ++c) ident[r][c] = (ident[r][c] + p - mul_mod(k, ident[pivot_row][c], p)) % p;
    }
    ++pivot_row;
  }
  return {ident.begin() + static_cast<std::ptrdiff_t>(pivot_row), ident.end()};
}

}  // namespace ccf

#include "maxsym/matrix.hpp"

#include <algorithm>
#include <cstdint>

namespace maxsym {

namespace {

void require_same_field(const FpMatrix& a, const FpMatrix& b, const char* what) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument(std::string(what) + ": matrices over different fields");
}

// row_dst -= c * row_src, both reduced mod p
void axpy_neg(std::span<Residue> dst, std::span<const Residue> src, Residue c, std::uint32_t p,
              std::size_t from = 0) {
  if (c == 0) return;
  const Residue nc = p - c;
  for (std::size_t j = from; j < dst.size(); ++j)
    if (src[j] != 0) dst[j] = (dst[j] + nc * src[j]) % p;
}

}  // namespace

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) { return scalar(n, 1, p); }

FpMatrix FpMatrix::scalar(std::size_t n, Residue c, std::uint32_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = c % p;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  FpMatrix m(r, c, p);
  const PrimeField f(p);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.reduce(rows[i][j]);
  }
  return m;
}

FpMatrix FpMatrix::from_vectors(const std::vector<Vec>& rows, std::size_t cols, std::uint32_t p) {
  FpMatrix m(rows.size(), cols, p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("FpMatrix::from_vectors: bad length");
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Residue x) { return x == 0; });
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1U : 0U)) return false;
  return true;
}

std::vector<std::vector<Residue>> FpMatrix::to_rows() const {
  std::vector<std::vector<Residue>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "operator*");
  if (a.cols() != b.rows()) throw std::invalid_argument("operator*: dimension mismatch");
  const std::uint32_t p = a.modulus();
  FpMatrix c(a.rows(), b.cols(), p);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const auto ar = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t x = ar[k];
      if (x == 0) continue;
      const auto br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += x * br[j];
    }
    auto cr = c.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) cr[j] = static_cast<Residue>(acc[j] % p);
  }
  return c;
}

FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "operator+");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("operator+: dimension mismatch");
  FpMatrix c(a.rows(), a.cols(), a.modulus());
  const PrimeField f(a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "operator-");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("operator-: dimension mismatch");
  FpMatrix c(a.rows(), a.cols(), a.modulus());
  const PrimeField f(a.modulus());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.sub(a(i, j), b(i, j));
  return c;
}

FpMatrix scaled(const FpMatrix& a, Residue c) {
  FpMatrix out(a.rows(), a.cols(), a.modulus());
  c %= a.modulus();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = (a(i, j) * c) % a.modulus();
  return out;
}

Vec vec_mat(std::span<const Residue> v, const FpMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: dimension mismatch");
  std::vector<std::uint64_t> acc(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::uint64_t x = v[k];
    if (x == 0) continue;
    const auto r = m.row(k);
    for (std::size_t j = 0; j < m.cols(); ++j) acc[j] += x * r[j];
  }
  Vec out(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out[j] = static_cast<Residue>(acc[j] % m.modulus());
  return out;
}

FpMatrix transpose(const FpMatrix& m) {
  FpMatrix t(m.cols(), m.rows(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b) {
  require_same_field(a, b, "kronecker");
  const std::uint32_t p = a.modulus();
  FpMatrix k(a.rows() * b.rows(), a.cols() * b.cols(), p);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Residue x = a(i, j);
      if (x == 0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = (x * b(r, c)) % p;
    }
  return k;
}

FpMatrix matrix_power(const FpMatrix& m, std::uint64_t e) {
  if (!m.is_square()) throw std::invalid_argument("matrix_power: non-square matrix");
  FpMatrix result = FpMatrix::identity(m.rows(), m.modulus());
  FpMatrix base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

RrefResult rref(const FpMatrix& m) {
  RrefResult out{m, 0, {}};
  FpMatrix& a = out.matrix;
  const std::uint32_t p = a.modulus();
  const PrimeField f(p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(r).begin());
    const Residue inv = f.inv(a(r, c));
    for (auto& x : a.row(r)) x = (x * inv) % p;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a(i, c) != 0) axpy_neg(a.row(i), a.row(r), a(i, c), p, c);
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t rank(const FpMatrix& m) { return rref(m).rank; }

FpMatrix nullspace(const FpMatrix& m) {
  // x * m = 0  <=>  m^T x^T = 0; solve on the transpose.
  const RrefResult rr = rref(transpose(m));
  const std::size_t n = m.rows();
  const std::uint32_t p = m.modulus();
  std::vector<bool> is_pivot(n, false);
  for (auto c : rr.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec x(n, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < rr.rank; ++i) {
      const Residue v = rr.matrix(i, free);
      x[rr.pivots[i]] = v == 0 ? 0 : p - v;
    }
    basis.push_back(std::move(x));
  }
  return Subspace::span(basis, n, p).basis();
}

FpMatrix invert(const FpMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("invert: non-square matrix");
  const std::size_t n = m.rows();
  const std::uint32_t p = m.modulus();
  FpMatrix aug(n, 2 * n, p);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(m.row(i).begin(), m.row(i).end(), aug.row(i).begin());
    aug(i, n + i) = 1;
  }
  const RrefResult rr = rref(aug);
  if (rr.rank < n || rr.pivots[n - 1] != n - 1) {
    std::size_t r = 0;
    while (r < rr.pivots.size() && rr.pivots[r] < n) ++r;
    throw SingularMatrixError(n, r);
  }
  FpMatrix inv(n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    std::copy(rr.matrix.row(i).begin() + n, rr.matrix.row(i).end(), inv.row(i).begin());
  return inv;
}

FpMatrix transpose_inverse(const FpMatrix& m) { return transpose(invert(m)); }

Residue determinant(const FpMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant: non-square matrix");
  FpMatrix a = m;
  const std::uint32_t p = m.modulus();
  const PrimeField f(p);
  Residue det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(c).begin());
      det = f.neg(det);
    }
    det = f.mul(det, a(c, c));
    const Residue inv = f.inv(a(c, c));
    for (std::size_t i = c + 1; i < n; ++i)
      if (a(i, c) != 0) axpy_neg(a.row(i), a.row(c), f.mul(a(i, c), inv), p, c);
  }
  return det;
}

std::optional<Vec> solve_membership(const FpMatrix& rref_basis, std::span<const Residue> v) {
  if (v.size() != rref_basis.cols())
    throw std::invalid_argument("solve_membership: vector length " + std::to_string(v.size()) +
                                " does not match basis width " +
                                std::to_string(rref_basis.cols()));
  const std::uint32_t p = rref_basis.modulus();
  Vec residual(v.begin(), v.end());
  Vec coords;
  for (std::size_t i = 0; i < rref_basis.rows(); ++i) {
    const auto r = rref_basis.row(i);
    std::size_t piv = 0;
    while (piv < r.size() && r[piv] == 0) ++piv;
    if (piv == r.size()) break;
    const Residue c = residual[piv];
    coords.push_back(c);
    axpy_neg(residual, r, c, p);
  }
  for (auto x : residual)
    if (x != 0) return std::nullopt;
  return coords;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient_dim, std::uint32_t p) : n_(ambient_dim), p_(p) {}

Subspace Subspace::span(const FpMatrix& rows) {
  Subspace s(rows.cols(), rows.modulus());
  for (std::size_t i = 0; i < rows.rows() && !s.is_full(); ++i) s.insert(rows.row(i));
  return s;
}

Subspace Subspace::span(const std::vector<Vec>& rows, std::size_t ambient_dim, std::uint32_t p) {
  Subspace s(ambient_dim, p);
  for (const auto& r : rows) {
    if (s.is_full()) break;
    s.insert(r);
  }
  return s;
}

Subspace Subspace::full(std::size_t n, std::uint32_t p) {
  return span(FpMatrix::identity(n, p));
}

FpMatrix Subspace::basis() const { return FpMatrix::from_vectors(rows_, n_, p_); }

Vec Subspace::reduce(std::span<const Residue> v) const {
  if (v.size() != n_) throw std::invalid_argument("Subspace::reduce: dimension mismatch");
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) axpy_neg(r, rows_[i], r[pivots_[i]], p_);
  return r;
}

bool Subspace::contains(std::span<const Residue> v) const {
  const Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](Residue x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.n_ != n_) return false;
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

Vec Subspace::pivot_coordinates(std::span<const Residue> v) const {
  Vec c(pivots_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

std::optional<Vec> Subspace::coordinates(std::span<const Residue> v) const {
  if (!contains(v)) return std::nullopt;
  return pivot_coordinates(v);
}

bool Subspace::insert(std::span<const Residue> v) {
  Vec r = reduce(v);
  std::size_t piv = 0;
  while (piv < n_ && r[piv] == 0) ++piv;
  if (piv == n_) return false;
  const PrimeField f(p_);
  const Residue inv = f.inv(r[piv]);
  for (auto& x : r) x = (x * inv) % p_;
  for (auto& row : rows_) axpy_neg(row, r, row[piv], p_);
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, piv);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  Subspace s = *this;
  for (const auto& r : other.rows_) s.insert(r);
  return s;
}

Subspace Subspace::intersection(const Subspace& other) const {
  // (U ∩ W)° = U° + W°
  return annihilator().sum(other.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const {
  if (rows_.empty()) return full(n_, p_);
  return span(nullspace(transpose(basis())));
}

std::vector<std::size_t> Subspace::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (k < pivots_.size() && pivots_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

bool Subspace::operator<(const Subspace& o) const {
  if (rows_.size() != o.rows_.size()) return rows_.size() < o.rows_.size();
  return rows_ < o.rows_;
}

}  // namespace maxsym

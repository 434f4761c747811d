#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxsym/prime_field.hpp"

namespace maxsym {

/// Dense row-major matrix over F_p with entries kept in [0, p).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);

  static FpMatrix identity(std::size_t n, std::uint32_t p);
  static FpMatrix scalar(std::size_t n, Residue c, std::uint32_t p);
  /// Entries are reduced mod p, negative values allowed.
  static FpMatrix from_rows(const std::vector<std::vector<long long>>& rows, std::uint32_t p);
  static FpMatrix from_vectors(const std::vector<Vec>& rows, std::size_t cols, std::uint32_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }
  bool is_square() const { return rows_ == cols_; }

  Residue& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Residue> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Residue> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<Residue>& data() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;
  std::vector<std::vector<Residue>> to_rows() const;

  bool operator==(const FpMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Residue> data_;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(std::size_t n, std::size_t rank)
      : std::runtime_error("matrix of size " + std::to_string(n) + " is singular (rank " +
                           std::to_string(rank) + ")"),
        rank_(rank) {}
  std::size_t rank() const { return rank_; }

 private:
  std::size_t rank_;
};

FpMatrix operator*(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator+(const FpMatrix& a, const FpMatrix& b);
FpMatrix operator-(const FpMatrix& a, const FpMatrix& b);
FpMatrix scaled(const FpMatrix& a, Residue c);

/// Row vector times matrix.
Vec vec_mat(std::span<const Residue> v, const FpMatrix& m);
FpMatrix transpose(const FpMatrix& m);
FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);
FpMatrix matrix_power(const FpMatrix& m, std::uint64_t e);

struct RrefResult {
  FpMatrix matrix;  // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const FpMatrix& m);
std::size_t rank(const FpMatrix& m);
/// Rows form a reduced-echelon basis of {x : x * m = 0}.
FpMatrix nullspace(const FpMatrix& m);
FpMatrix invert(const FpMatrix& m);
FpMatrix transpose_inverse(const FpMatrix& m);
Residue determinant(const FpMatrix& m);

/// Coordinates of v with respect to the nonzero rows of an rref matrix, or
/// nullopt when v is outside the row space.
std::optional<Vec> solve_membership(const FpMatrix& rref_basis, std::span<const Residue> v);

/// A subspace of F_p^n kept as a reduced row echelon basis. The basis is
/// canonical, so two subspaces are equal iff their bases are identical.
class Subspace {
 public:
  Subspace() = default;
  Subspace(std::size_t ambient_dim, std::uint32_t p);

  static Subspace span(const FpMatrix& rows);
  static Subspace span(const std::vector<Vec>& rows, std::size_t ambient_dim, std::uint32_t p);
  static Subspace full(std::size_t n, std::uint32_t p);

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return n_; }
  std::size_t codim() const { return n_ - rows_.size(); }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return rows_.empty(); }
  bool is_full() const { return rows_.size() == n_; }

  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  FpMatrix basis() const;

  /// Reduce v modulo the subspace; the result is the canonical coset
  /// representative (zero at every pivot column).
  Vec reduce(std::span<const Residue> v) const;
  bool contains(std::span<const Residue> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates with respect to rows(), read off the pivot columns. Only
  /// meaningful for members.
  Vec pivot_coordinates(std::span<const Residue> v) const;
  std::optional<Vec> coordinates(std::span<const Residue> v) const;

  /// Adds v; returns true when the dimension grew.
  bool insert(std::span<const Residue> v);

  Subspace sum(const Subspace& other) const;
  Subspace intersection(const Subspace& other) const;
  /// {x : x . y = 0 for every y in this subspace}.
  Subspace annihilator() const;

  /// Columns that are not pivots, in increasing order.
  std::vector<std::size_t> free_columns() const;

  bool operator==(const Subspace& o) const { return n_ == o.n_ && rows_ == o.rows_; }
  /// Orders by dimension, then lexicographically by basis rows.
  bool operator<(const Subspace& o) const;

 private:
  std::size_t n_ = 0;
  std::uint32_t p_ = 0;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace maxsym

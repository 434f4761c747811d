#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "maxsym/matrix.hpp"

namespace maxsym {

int mobius(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Dimension of the degree-k Lie power of a d-dimensional space,
/// (1/k) * sum over i | k of mu(i) d^(k/i). Rejects p <= k.
std::uint64_t witt_dims(std::uint64_t d, std::uint64_t k, std::uint32_t p);

/// The characteristic-p variant with Euler's totient weights, valid for any p.
/// Agrees with witt_dims when p > k.
std::uint64_t witt_dims_modular(std::uint64_t d, std::uint64_t k, std::uint32_t p);

/// Flat coordinates of V^{(x)n}: (i_1, ..., i_n) maps to the base-d number i_1 i_2 ... i_n.
struct TensorIndexSpace {
  std::size_t d = 0;
  std::size_t n = 0;

  std::size_t dim() const;
  std::size_t flat(std::span<const std::size_t> index) const;
  std::vector<std::size_t> multi(std::size_t flat_index) const;
};

Vec tensor_product(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p);
/// a (x) b - b (x) a, where a has degree i and b degree j on a d-dim space.
Vec tensor_bracket(std::span<const Residue> a, std::size_t deg_a, std::span<const Residue> b,
                   std::size_t deg_b, std::size_t d, std::uint32_t p);
/// x * (g (x) ... (x) g) for x in the n-th tensor power.
Vec apply_tensor_power(std::span<const Residue> x, const FpMatrix& g, std::size_t n);

/// Error raised when a subspace turns out not to be invariant under a matrix.
class NotInvariantError : public std::runtime_error {
 public:
  NotInvariantError(std::size_t row, const std::string& what)
      : std::runtime_error(what), row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

/// Matrix of g acting diagonally on a subspace of the n-th tensor power,
/// expressed in the subspace's echelon basis (row convention).
FpMatrix induced_action(const FpMatrix& g, const Subspace& space, std::size_t n, bool verify = true);

struct LiePowerSpace {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint32_t p = 0;
  Subspace space;  // inside the n-th tensor power

  std::size_t dim() const { return space.dim(); }
};

LiePowerSpace build_lie_power(std::size_t d, std::uint32_t p, std::size_t n);

/// Alternating, symmetric and (n = 3) mixed components of the n-th tensor power.
struct SymAltSpaces {
  std::size_t d = 0;
  std::size_t n = 0;
  std::uint32_t p = 0;
  Subspace alt;
  Subspace sym;
  Subspace mixed;
};

SymAltSpaces build_sym_alt(std::size_t d, std::uint32_t p, std::size_t n);

/// Lie powers of degree 1..max_degree together with bracket structure
/// constants between them.
class LieAlgebra {
 public:
  LieAlgebra(std::size_t d, std::uint32_t p, std::size_t max_degree);

  std::size_t d() const { return d_; }
  std::uint32_t p() const { return p_; }
  std::size_t max_degree() const { return powers_.size(); }
  std::size_t dim(std::size_t k) const { return power(k).dim(); }
  const LiePowerSpace& power(std::size_t k) const;

  /// Structure constants: row a * dim(j) + b holds [x_a, y_b] in degree i + j.
  const FpMatrix& table(std::size_t i, std::size_t j) const;

  Vec bracket(std::size_t i, std::span<const Residue> u, std::size_t j, std::span<const Residue> v) const;
  /// Left-normed bracket [x_1, ..., x_k] of degree-1 elements.
  Vec left_normed(const std::vector<Vec>& xs) const;

  Vec to_tensor(std::size_t k, std::span<const Residue> coords) const;
  /// Coordinates of a tensor lying in the k-th Lie power; throws otherwise.
  Vec from_tensor(std::size_t k, std::span<const Residue> tensor) const;

  FpMatrix induced_action(const FpMatrix& g, std::size_t k, bool verify = true) const;

  void save(const std::filesystem::path& file) const;
  /// nullopt when the file is missing, malformed, for a different (p, d, n)
  /// or has dimensions disagreeing with witt_dims.
  static std::optional<LieAlgebra> load(const std::filesystem::path& file, std::size_t d,
                                        std::uint32_t p, std::size_t max_degree);
  static LieAlgebra load_or_build(std::size_t d, std::uint32_t p, std::size_t max_degree,
                                  const std::optional<std::filesystem::path>& cache_dir);
  static std::string cache_file_name(std::size_t d, std::uint32_t p, std::size_t max_degree);

 private:
  LieAlgebra() = default;
  void build_tables();

  std::size_t d_ = 0;
  std::uint32_t p_ = 0;
  std::vector<LiePowerSpace> powers_;
  std::map<std::pair<std::size_t, std::size_t>, FpMatrix> tables_;
};

}  // namespace maxsym

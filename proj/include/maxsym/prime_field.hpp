#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace maxsym {

using Residue = std::uint32_t;
using Vec = std::vector<Residue>;

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Arithmetic modulo an odd prime p that fits comfortably in 16 bits, so
/// that products of two residues never overflow 32 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  Residue reduce(std::int64_t a) const {
    const std::int64_t r = a % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    const Residue s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const { return (a * b) % p_; }
  Residue pow(Residue a, std::uint64_t e) const;
  Residue inv(Residue a) const;

  /// Smallest generator of the multiplicative group.
  Residue primitive_root() const;
  /// Least quadratic non-residue.
  Residue least_nonresidue() const;
  bool is_square(Residue a) const;

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

}  // namespace maxsym

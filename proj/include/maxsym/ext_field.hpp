#pragma once

#include <cstdint>
#include <vector>

#include "maxsym/polynomial.hpp"

namespace maxsym {

/// F_{p^r} realised as F_p[x]/(modulus), elements stored as coordinate rows
/// in the basis 1, x, ..., x^(r-1).
struct ExtFieldData {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  Poly modulus;                      // monic, degree r
  Vec primitive_elt;                 // generator of the multiplicative group
  FpMatrix frobenius;                // a -> a^p
  std::vector<FpMatrix> mult_tables;  // multiplication by x^i, i < r

  std::uint64_t order() const;  // p^r
  Vec one() const;
  Vec mul(const Vec& a, const Vec& b) const;
  Vec pow(const Vec& a, std::uint64_t e) const;
  /// Matrix of b -> b*a in row convention.
  FpMatrix mult_matrix(const Vec& a) const;
  /// Multiplicative order by repeated multiplication.
  std::uint64_t element_order(const Vec& a) const;
  /// Elements numbered by their base-p digits, constant term first.
  Vec element(std::uint64_t code) const;
};

/// Irreducibility test for prime degree r: gcd(x^(p^k) - x, f) = 1 for
/// 0 < k < r and x^(p^r) = x mod f.
bool is_irreducible_prime_degree(const Poly& f, const PrimeField& F);

/// Throws std::invalid_argument unless p, r are prime and p^r <= 10^6.
ExtFieldData build_ext_field(std::uint32_t p, std::uint32_t r);

}  // namespace maxsym

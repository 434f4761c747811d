#include "maxsym/prime_field.hpp"

#include <string>

namespace maxsym {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p < 3 || p > 0xffff || !is_prime(p))
    throw std::invalid_argument("PrimeField: modulus must be an odd prime below 65536, got " +
                                std::to_string(p));
}

Residue PrimeField::pow(Residue a, std::uint64_t e) const {
  Residue result = 1 % p_;
  Residue base = a % p_;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

Residue PrimeField::inv(Residue a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField::inv: zero has no inverse");
  return pow(a, p_ - 2);
}

Residue PrimeField::primitive_root() const {
  const auto divisors = prime_divisors(p_ - 1);
  for (Residue g = 2; g < p_; ++g) {
    bool ok = true;
    for (auto q : divisors)
      if (pow(g, (p_ - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // p == 2 only, excluded by the constructor
}

bool PrimeField::is_square(Residue a) const {
  a %= p_;
  return a == 0 || pow(a, (p_ - 1) / 2) == 1;
}

Residue PrimeField::least_nonresidue() const {
  for (Residue a = 2; a < p_; ++a)
    if (!is_square(a)) return a;
  throw std::logic_error("no quadratic non-residue");
}

}  // namespace maxsym

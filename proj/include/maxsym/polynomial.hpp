#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "maxsym/matrix.hpp"

namespace maxsym {

/// Dense univariate polynomial over F_p, coefficients from the constant term
/// upward. The zero polynomial is the empty vector; every other value has a
/// nonzero leading coefficient.
using Poly = std::vector<Residue>;

namespace poly {

void trim(Poly& f);
int degree(const Poly& f);  // -1 for zero
Poly monic(const Poly& f, const PrimeField& F);
Poly x_power(std::size_t k);

Poly add(const Poly& a, const Poly& b, const PrimeField& F);
Poly sub(const Poly& a, const Poly& b, const PrimeField& F);
Poly mul(const Poly& a, const Poly& b, const PrimeField& F);
/// Quotient and remainder; throws on division by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const PrimeField& F);
Poly mod(const Poly& a, const Poly& b, const PrimeField& F);
Poly gcd(Poly a, Poly b, const PrimeField& F);  // monic
Poly derivative(const Poly& f, const PrimeField& F);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m, const PrimeField& F);
Poly powmod(const Poly& a, std::uint64_t e, const Poly& m, const PrimeField& F);

/// x^(p^k) mod m.
Poly frobenius_power(std::size_t k, const Poly& m, const PrimeField& F);

bool is_irreducible(const Poly& f, const PrimeField& F);

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
std::vector<std::pair<Poly, int>> factor(const Poly& f, const PrimeField& F, std::uint64_t seed = 1);

/// Characteristic polynomial det(xI - m) by reduction to Hessenberg form.
Poly charpoly(const FpMatrix& m);

/// f evaluated at a square matrix.
FpMatrix evaluate(const Poly& f, const FpMatrix& m);

}  // namespace poly
}  // namespace maxsym

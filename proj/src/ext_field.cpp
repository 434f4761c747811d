#include "maxsym/ext_field.hpp"

#include <stdexcept>
#include <string>

namespace maxsym {

std::uint64_t ExtFieldData::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) q *= p;
  return q;
}

Vec ExtFieldData::one() const {
  Vec e(r, 0);
  e[0] = 1;
  return e;
}

Vec ExtFieldData::mul(const Vec& a, const Vec& b) const {
  const PrimeField F(p);
  Poly pa(a.begin(), a.end());
  Poly pb(b.begin(), b.end());
  poly::trim(pa);
  poly::trim(pb);
  Poly c = poly::mulmod(pa, pb, modulus, F);
  c.resize(r, 0);
  return c;
}

Vec ExtFieldData::pow(const Vec& a, std::uint64_t e) const {
  Vec result = one();
  Vec base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

FpMatrix ExtFieldData::mult_matrix(const Vec& a) const {
  FpMatrix m(r, r, p);
  for (std::uint32_t i = 0; i < r; ++i)
    if (a[i] != 0) m = m + scaled(mult_tables[i], a[i]);
  return m;
}

std::uint64_t ExtFieldData::element_order(const Vec& a) const {
  const Vec e = one();
  Vec x = a;
  for (std::uint64_t k = 1; k < order(); ++k) {
    if (x == e) return k;
    x = mul(x, a);
  }
  throw std::domain_error("ExtFieldData::element_order: element is not a unit");
}

Vec ExtFieldData::element(std::uint64_t code) const {
  Vec a(r);
  for (std::uint32_t i = 0; i < r; ++i) {
    a[i] = static_cast<Residue>(code % p);
    code /= p;
  }
  return a;
}

bool is_irreducible_prime_degree(const Poly& f, const PrimeField& F) {
  const int r = poly::degree(f);
  if (r < 1) return false;
  const Poly x = poly::x_power(1);
  Poly h = poly::mod(x, f, F);
  for (int k = 1; k < r; ++k) {
    h = poly::powmod(h, F.p(), f, F);
    if (poly::degree(poly::gcd(poly::sub(h, x, F), f, F)) > 0) return false;
  }
  h = poly::powmod(h, F.p(), f, F);
  return h == poly::mod(x, f, F);
}

ExtFieldData build_ext_field(std::uint32_t p, std::uint32_t r) {
  const PrimeField F(p);
  if (!is_prime(r)) throw std::invalid_argument("build_ext_field: degree must be prime, got " + std::to_string(r));
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < r; ++i) {
    q *= p;
    if (q > 1000000) throw std::invalid_argument("build_ext_field: p^r exceeds 10^6");
  }

  ExtFieldData E;
  E.p = p;
  E.r = r;
  for (std::uint64_t code = 0; code < q && E.modulus.empty(); ++code) {
    Poly f(r + 1);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < r; ++i) {
      f[i] = static_cast<Residue>(c % p);
      c /= p;
    }
    f[r] = 1;
    if (is_irreducible_prime_degree(f, F)) E.modulus = f;
  }
  if (E.modulus.empty()) throw std::logic_error("build_ext_field: no irreducible modulus found");

  for (std::uint32_t i = 0; i < r; ++i) {
    FpMatrix m(r, r, p);
    for (std::uint32_t j = 0; j < r; ++j) {
      Poly prod = poly::mod(poly::x_power(i + j), E.modulus, F);
      for (std::size_t k = 0; k < prod.size(); ++k) m(j, k) = prod[k];
    }
    E.mult_tables.push_back(std::move(m));
  }
  E.frobenius = FpMatrix(r, r, p);
  for (std::uint32_t j = 0; j < r; ++j) {
    Vec basis_elt(r, 0);
    basis_elt[j] = 1;
    const Vec img = E.pow(basis_elt, p);
    for (std::uint32_t k = 0; k < r; ++k) E.frobenius(j, k) = img[k];
  }

  const auto primes = prime_divisors(q - 1);
  for (std::uint64_t code = 1; code < q; ++code) {
    const Vec a = E.element(code);
    bool generator = true;
    for (auto l : primes)
      if (E.pow(a, (q - 1) / l) == E.one()) {
        generator = false;
        break;
      }
    if (generator) {
      E.primitive_elt = a;
      break;
    }
  }
  if (E.primitive_elt.empty()) throw std::logic_error("build_ext_field: no primitive element found");
  return E;
}

}  // namespace maxsym

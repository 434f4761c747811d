#include "maxsym/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace maxsym::poly {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly monic(const Poly& f, const PrimeField& F) {
  if (f.empty()) return f;
  const Residue inv = F.inv(f.back());
  Poly g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = F.mul(f[i], inv);
  return g;
}

Poly x_power(std::size_t k) {
  Poly f(k + 1, 0);
  f[k] = 1;
  return f;
}

Poly add(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}

Poly sub(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly c(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(c);
  return c;
}

Poly mul(const Poly& a, const Poly& b, const PrimeField& F) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += std::uint64_t{a[i]} * b[j];
  }
  Poly c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = static_cast<Residue>(acc[i] % F.p());
  trim(c);
  return c;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const PrimeField& F) {
  if (b.empty()) throw std::domain_error("poly::divmod: division by zero polynomial");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const Residue inv = F.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    const Residue c = F.mul(r[k + b.size() - 1], inv);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = F.sub(r[k + j], F.mul(c, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly mod(const Poly& a, const Poly& b, const PrimeField& F) { return divmod(a, b, F).second; }

Poly gcd(Poly a, Poly b, const PrimeField& F) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, F);
}

Poly derivative(const Poly& f, const PrimeField& F) {
  if (f.size() <= 1) return {};
  Poly d(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = F.mul(f[i], F.reduce(static_cast<std::int64_t>(i)));
  trim(d);
  return d;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m, const PrimeField& F) {
  return mod(mul(a, b, F), m, F);
}

Poly powmod(const Poly& a, std::uint64_t e, const Poly& m, const PrimeField& F) {
  Poly result = mod(Poly{1}, m, F);
  Poly base = mod(a, m, F);
  while (e > 0) {
    if (e & 1U) result = mulmod(result, base, m, F);
    e >>= 1U;
    if (e > 0) base = mulmod(base, base, m, F);
  }
  return result;
}

Poly frobenius_power(std::size_t k, const Poly& m, const PrimeField& F) {
  Poly h = mod(x_power(1), m, F);
  for (std::size_t i = 0; i < k; ++i) h = powmod(h, F.p(), m, F);
  return h;
}

bool is_irreducible(const Poly& f, const PrimeField& F) {
  const int n = degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;
  const Poly x = x_power(1);
  Poly h = mod(x, f, F);
  for (int k = 1; k <= n / 2; ++k) {
    h = powmod(h, F.p(), f, F);
    if (degree(gcd(sub(h, x, F), f, F)) > 0) return false;
  }
  return true;
}

namespace {

std::vector<std::pair<Poly, int>> squarefree(const Poly& f, const PrimeField& F) {
  std::vector<std::pair<Poly, int>> out;
  Poly c = gcd(f, derivative(f, F), F);
  Poly w = divmod(f, c, F).first;
  int i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(w, c, F);
    Poly z = divmod(w, y, F).first;
    if (degree(z) > 0) out.emplace_back(monic(z, F), i);
    ++i;
    w = std::move(y);
    c = divmod(c, w, F).first;
  }
  if (degree(c) > 0) {
    // c is a p-th power; over F_p its p-th root just drops coefficients.
    Poly root;
    for (std::size_t k = 0; k < c.size(); k += F.p()) root.push_back(c[k]);
    for (auto& [g, m] : squarefree(root, F)) out.emplace_back(g, m * static_cast<int>(F.p()));
  }
  return out;
}

std::vector<std::pair<Poly, int>> distinct_degree(Poly f, const PrimeField& F) {
  std::vector<std::pair<Poly, int>> out;
  const Poly x = x_power(1);
  Poly h = mod(x, f, F);
  for (int i = 1; 2 * i <= degree(f); ++i) {
    h = powmod(h, F.p(), f, F);
    Poly g = gcd(sub(h, x, F), f, F);
    if (degree(g) > 0) {
      out.emplace_back(g, i);
      f = divmod(f, g, F).first;
      h = mod(h, f, F);
    }
  }
  if (degree(f) > 0) out.emplace_back(monic(f, F), degree(f));
  return out;
}

void equal_degree(const Poly& f, int e, const PrimeField& F, std::mt19937_64& rng,
                  std::vector<Poly>& out) {
  const int n = degree(f);
  if (n == e) {
    out.push_back(monic(f, F));
    return;
  }
  std::uniform_int_distribution<Residue> coeff(0, F.p() - 1);
  for (;;) {
    Poly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (degree(a) <= 0) continue;
    // a^((p^e - 1)/2) = (a * a^p * ... * a^(p^(e-1)))^((p-1)/2)
    Poly b = a;
    Poly norm = a;
    for (int k = 1; k < e; ++k) {
      b = powmod(b, F.p(), f, F);
      norm = mulmod(norm, b, f, F);
    }
    Poly t = powmod(norm, (F.p() - 1) / 2, f, F);
    Poly g = gcd(sub(t, Poly{1}, F), f, F);
    if (degree(g) > 0 && degree(g) < n) {
      equal_degree(g, e, F, rng, out);
      equal_degree(divmod(f, g, F).first, e, F, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& f, const PrimeField& F, std::uint64_t seed) {
  Poly g = f;
  trim(g);
  if (degree(g) < 1) return {};
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, int>> out;
  for (const auto& [s, mult] : squarefree(monic(g, F), F))
    for (const auto& [block, e] : distinct_degree(s, F)) {
      std::vector<Poly> parts;
      equal_degree(block, e, F, rng, parts);
      for (auto& q : parts) out.emplace_back(std::move(q), mult);
    }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

Poly charpoly(const FpMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly: non-square matrix");
  const std::size_t n = m.rows();
  const PrimeField F(m.modulus());
  FpMatrix h = m;
  for (std::size_t col = 1; col + 1 < n; ++col) {
    std::size_t i = col;
    while (i < n && h(i, col - 1) == 0) ++i;
    if (i == n) continue;
    if (i != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(col, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, col));
    }
    const Residue tinv = F.inv(h(col, col - 1));
    for (std::size_t r = col + 1; r < n; ++r) {
      const Residue u = F.mul(h(r, col - 1), tinv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h(r, j) = F.sub(h(r, j), F.mul(u, h(col, j)));
      for (std::size_t j = 0; j < n; ++j) h(j, col) = F.add(h(j, col), F.mul(u, h(j, r)));
    }
  }
  // Recurrence over leading principal minors of the Hessenberg form (1-based indices below).
  std::vector<Poly> pm(n + 1);
  pm[0] = Poly{1};
  auto at = [&](std::size_t r, std::size_t c) { return h(r - 1, c - 1); };
  for (std::size_t k = 1; k <= n; ++k) {
    pm[k] = mul(Poly{F.neg(at(k, k)), 1}, pm[k - 1], F);
    Residue t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = F.mul(t, at(k - i + 1, k - i));
      const Residue c = F.mul(t, at(k - i, k));
      if (c != 0) pm[k] = sub(pm[k], mul(Poly{c}, pm[k - i - 1], F), F);
    }
  }
  return pm[n];
}

FpMatrix evaluate(const Poly& f, const FpMatrix& m) {
  const std::size_t n = m.rows();
  FpMatrix r(n, n, m.modulus());
  if (f.empty()) return r;
  const PrimeField F(m.modulus());
  r = FpMatrix::scalar(n, f.back(), m.modulus());
  for (std::size_t k = f.size() - 1; k-- > 0;) {
    r = r * m;
    if (f[k] != 0)
      for (std::size_t i = 0; i < n; ++i) r(i, i) = F.add(r(i, i), f[k]);
  }
  return r;
}

}  // namespace maxsym::poly

#pragma once

// Explicit module maps between tensor constructions and Lie powers, checked
// for equivariance against induced actions.

#include <random>

#include "maxsym/lie_powers.hpp"
#include "test_support.hpp"

namespace testsupport {

using maxsym::Subspace;

struct IntertwinerReport {
  std::size_t domain_dim = 0;
  std::size_t rank = 0;
  std::size_t kernel_dim = 0;
  bool kernel_matches = false;  // kernel equals the expected subspace
  std::size_t equivariance_failures = 0;
};

inline Vec cycle_last_to_front(const Vec& x, std::size_t d) {
  // x1 (x) x2 (x) x3 -> x3 (x) x1 (x) x2
  Vec out(x.size(), 0);
  for (std::size_t i1 = 0; i1 < d; ++i1)
    for (std::size_t i2 = 0; i2 < d; ++i2)
      for (std::size_t i3 = 0; i3 < d; ++i3) out[(i3 * d + i1) * d + i2] = x[(i1 * d + i2) * d + i3];
  return out;
}

/// The map A^2V (x) V -> L^3V, [u,v] (x) w -> [[u,v],w]; its kernel should be A^3V.
inline IntertwinerReport check_alt2_tensor_v(std::size_t d, std::uint32_t p, std::size_t trials, std::uint64_t seed) {
  const auto alt2 = maxsym::build_sym_alt(d, p, 2).alt;
  const auto alt3 = maxsym::build_sym_alt(d, p, 3).alt;
  const auto L3 = maxsym::build_lie_power(d, p, 3).space;
  Subspace dom(d * d * d, p);
  for (const auto& a : alt2.rows())
    for (std::size_t k = 0; k < d; ++k) {
      Vec e(d, 0);
      e[k] = 1;
      dom.insert(maxsym::tensor_product(a, e, p));
    }
  FpMatrix phi(dom.dim(), L3.dim(), p);
  for (std::size_t r = 0; r < dom.dim(); ++r) {
    const Vec& x = dom.rows()[r];
    const Vec tx = cycle_last_to_front(x, d);
    Vec img(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) img[i] = (x[i] + p - tx[i]) % p;
    auto c = L3.coordinates(img);
    if (!c) throw std::logic_error("image outside L^3V");
    for (std::size_t k = 0; k < c->size(); ++k) phi(r, k) = (*c)[k];
  }
  IntertwinerReport rep;
  rep.domain_dim = dom.dim();
  rep.rank = maxsym::rank(phi);
  const FpMatrix ker = maxsym::nullspace(phi);
  rep.kernel_dim = ker.rows();
  Subspace ker_tensors(d * d * d, p);
  for (std::size_t r = 0; r < ker.rows(); ++r) {
    Vec t(d * d * d, 0);
    for (std::size_t k = 0; k < dom.dim(); ++k)
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = (t[i] + ker(r, k) * dom.rows()[k][i]) % p;
    ker_tensors.insert(t);
  }
  rep.kernel_matches = ker_tensors == alt3;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const FpMatrix g = random_invertible(d, p, rng);
    const FpMatrix lhs = maxsym::induced_action(g, dom, 3) * phi;
    const FpMatrix rhs = phi * maxsym::induced_action(g, L3, 3);
    if (!(lhs == rhs)) ++rep.equivariance_failures;
  }
  return rep;
}

/// For d = 2 the map A^2V (x) S^2V -> L^4V, [e1,e2] (x) (ei . ej) -> [e1,e2,ei,ej].
inline IntertwinerReport check_alt2_sym2(std::uint32_t p, std::size_t trials, std::uint64_t seed) {
  const std::size_t d = 2;
  const auto L4 = maxsym::build_lie_power(d, p, 4).space;
  const Vec e1{1, 0}, e2{0, 1};
  const Vec w = maxsym::tensor_bracket(e1, 1, e2, 1, d, p);
  auto sym = [&](const Vec& a, const Vec& b) {
    Vec s = maxsym::tensor_product(a, b, p);
    const Vec t = maxsym::tensor_product(b, a, p);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (s[i] + t[i]) % p;
    return s;
  };
  auto lie3 = [&](const Vec& a, const Vec& b) {
    const Vec x = maxsym::tensor_bracket(w, 2, a, 1, d, p);
    return maxsym::tensor_bracket(x, 3, b, 1, d, p);
  };
  const std::vector<Vec> domain_vectors{maxsym::tensor_product(w, sym(e1, e1), p),
                                        maxsym::tensor_product(w, sym(e1, e2), p),
                                        maxsym::tensor_product(w, sym(e2, e2), p)};
  const std::vector<Vec> images{lie3(e1, e1), lie3(e1, e2), lie3(e2, e2)};
  const Subspace dom = Subspace::span(domain_vectors, 16, p);
  FpMatrix coords(3, dom.dim(), p);  // domain_vectors in the echelon basis of dom
  FpMatrix phi_b(3, L4.dim(), p);
  for (std::size_t k = 0; k < 3; ++k) {
    const Vec c = dom.pivot_coordinates(domain_vectors[k]);
    for (std::size_t j = 0; j < c.size(); ++j) coords(k, j) = c[j];
    auto s = L4.coordinates(images[k]);
    if (!s) throw std::logic_error("bracket outside L^4V");
    for (std::size_t j = 0; j < s->size(); ++j) phi_b(k, j) = (*s)[j];
  }
  IntertwinerReport rep;
  rep.domain_dim = dom.dim();
  const FpMatrix phi = maxsym::invert(coords) * phi_b;
  rep.rank = maxsym::rank(phi);
  rep.kernel_dim = maxsym::nullspace(phi).rows();
  rep.kernel_matches = rep.kernel_dim == 0;
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const FpMatrix g = random_invertible(d, p, rng);
    const FpMatrix lhs = maxsym::induced_action(g, dom, 4) * phi;
    const FpMatrix rhs = phi * maxsym::induced_action(g, L4, 4);
    if (!(lhs == rhs)) ++rep.equivariance_failures;
  }
  return rep;
}

}  // namespace testsupport

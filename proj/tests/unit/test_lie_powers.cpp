#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "intertwiners.hpp"
#include "maxsym/lie_powers.hpp"
#include "test_support.hpp"

using namespace maxsym;
using testsupport::random_invertible;
using testsupport::random_vec;

namespace {

// Tensor helpers written out directly so they can serve as an oracle.
Vec outer(const Vec& a, const Vec& b, std::uint32_t p) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = (a[i] * b[j]) % p;
  return out;
}

Vec commutator_tensor(const Vec& a, const Vec& b, std::uint32_t p) {
  Vec x = outer(a, b, p), y = outer(b, a, p);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + p - y[i]) % p;
  return x;
}

Vec left_normed_tensor(const std::vector<Vec>& xs, std::uint32_t p) {
  Vec acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = commutator_tensor(acc, xs[i], p);
  return acc;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Vec unit(std::size_t d, std::size_t i) {
  Vec e(d, 0);
  e[i] = 1;
  return e;
}

}  // namespace

TEST_CASE("Witt dimensions match closed forms") {
  for (std::uint64_t d = 1; d <= 8; ++d) {
    CHECK(witt_dims(d, 1, 5) == d);
    CHECK(witt_dims(d, 2, 5) == d * (d - 1) / 2);
    CHECK(witt_dims(d, 3, 5) == (d * d * d - d) / 3);
    CHECK(witt_dims(d, 4, 5) == (d * d * d * d - d * d) / 4);
    CHECK(witt_dims_modular(d, 4, 5) == witt_dims(d, 4, 5));
  }
  CHECK(witt_dims(2, 4, 7) == 3);
  CHECK(witt_dims(3, 4, 7) == 18);
  CHECK_THROWS_AS(witt_dims(3, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(witt_dims(3, 5, 5), std::invalid_argument);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
}

TEST_CASE("Lie power dimensions agree with the Witt formula") {
  for (std::uint32_t p : {5u, 7u})
    for (std::size_t d = 2; d <= 6; ++d)
      for (std::size_t n = 2; n <= 4; ++n) {
        if (d == 6 && n == 4 && p == 7) continue;
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(n);
        CHECK(build_lie_power(d, p, n).dim() == witt_dims(d, n, p));
      }
}

TEST_CASE("second Lie power of a plane is spanned by [e1,e2]") {
  const auto L2 = build_lie_power(2, 5, 2);
  REQUIRE(L2.dim() == 1);
  CHECK(L2.space.rows()[0] == Vec{0, 1, 4, 0});
}

TEST_CASE("Lie powers equal the span of all left-normed basis brackets") {
  const std::uint32_t p = 5;
  for (std::size_t d = 2; d <= 3; ++d)
    for (std::size_t n = 2; n <= 4; ++n) {
      Subspace s(ipow(d, n), p);
      for (std::uint64_t code = 0; code < ipow(d, n); ++code) {
        std::uint64_t c = code;
        std::vector<Vec> xs;
        for (std::size_t k = 0; k < n; ++k, c /= d) xs.push_back(unit(d, c % d));
        s.insert(left_normed_tensor(xs, p));
      }
      CHECK(s == build_lie_power(d, p, n).space);
    }
}

TEST_CASE("bracket tables agree with tensor brackets") {
  const std::uint32_t p = 7;
  const LieAlgebra L(3, p, 4);
  std::mt19937_64 rng(11);
  for (std::size_t i = 1; i <= 3; ++i)
    for (std::size_t j = 1; i + j <= 4; ++j)
      for (int t = 0; t < 30; ++t) {
        const Vec u = random_vec(L.dim(i), p, rng), v = random_vec(L.dim(j), p, rng);
        const Vec tu = L.to_tensor(i, u), tv = L.to_tensor(j, v);
        const Vec expected = commutator_tensor(tu, tv, p);
        CHECK(L.to_tensor(i + j, L.bracket(i, u, j, v)) == expected);
      }
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  const std::uint32_t p = 5;
  const LieAlgebra L(3, p, 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Vec a = random_vec(3, p, rng), b = random_vec(3, p, rng), c = random_vec(3, p, rng);
    Vec ab = L.bracket(1, a, 1, b), ba = L.bracket(1, b, 1, a);
    for (std::size_t k = 0; k < ab.size(); ++k) CHECK((ab[k] + ba[k]) % p == 0);
    const Vec j1 = L.bracket(2, ab, 1, c);
    const Vec j2 = L.bracket(2, L.bracket(1, b, 1, c), 1, a);
    const Vec j3 = L.bracket(2, L.bracket(1, c, 1, a), 1, b);
    for (std::size_t k = 0; k < j1.size(); ++k) CHECK((j1[k] + j2[k] + j3[k]) % p == 0);
  }
}

TEST_CASE("left_normed matches the tensor oracle") {
  const std::uint32_t p = 5;
  const LieAlgebra L(2, p, 4);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vec> xs;
    for (int k = 0; k < 4; ++k) xs.push_back(random_vec(2, p, rng));
    CHECK(L.to_tensor(4, L.left_normed(xs)) == left_normed_tensor(xs, p));
  }
}

TEST_CASE("induced actions are homomorphisms") {
  const std::uint32_t p = 5;
  const LieAlgebra L(3, p, 4);
  std::mt19937_64 rng(17);
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(L.induced_action(FpMatrix::identity(3, p), k).is_identity());
    for (int t = 0; t < 15; ++t) {
      const FpMatrix g = random_invertible(3, p, rng), h = random_invertible(3, p, rng);
      CHECK(L.induced_action(g * h, k) == L.induced_action(g, k) * L.induced_action(h, k));
    }
    for (Residue lam = 1; lam < p; ++lam) {
      Residue lk = 1;
      for (std::size_t i = 0; i < k; ++i) lk = (lk * lam) % p;
      CHECK(L.induced_action(FpMatrix::scalar(3, lam, p), k) == FpMatrix::scalar(L.dim(k), lk, p));
    }
  }
}

TEST_CASE("induced action agrees with the bracket of images") {
  const std::uint32_t p = 7;
  const LieAlgebra L(3, p, 3);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    const FpMatrix g = random_invertible(3, p, rng);
    const Vec a = random_vec(3, p, rng), b = random_vec(3, p, rng), c = random_vec(3, p, rng);
    const Vec lhs = vec_mat(L.left_normed({a, b, c}), L.induced_action(g, 3));
    CHECK(lhs == L.left_normed({vec_mat(a, g), vec_mat(b, g), vec_mat(c, g)}));
  }
}

TEST_CASE("a plane acts on its second Lie power by the determinant") {
  const std::uint32_t p = 5;
  const LieAlgebra L(2, p, 2);
  std::mt19937_64 rng(29);
  for (int t = 0; t < 50; ++t) {
    const FpMatrix g = random_invertible(2, p, rng);
    const FpMatrix a = L.induced_action(g, 2);
    REQUIRE(a.rows() == 1);
    CHECK(static_cast<std::int64_t>(a(0, 0)) == testsupport::laplace_det(g));
  }
}

TEST_CASE("induced_action rejects non-invariant subspaces") {
  const Subspace line = Subspace::span({Vec{1, 0, 0, 0}}, 4, 5);
  const FpMatrix g = FpMatrix::from_rows({{0, 1}, {1, 0}}, 5);
  CHECK_THROWS_AS(induced_action(g, line, 2), NotInvariantError);
}

TEST_CASE("symmetric and alternating parts") {
  const std::uint32_t p = 7;
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto s2 = build_sym_alt(d, p, 2);
    CHECK(s2.alt.dim() == binomial(d, 2));
    CHECK(s2.sym.dim() == binomial(d + 1, 2));
    CHECK(s2.alt.intersection(s2.sym).is_zero());
    CHECK(s2.alt.sum(s2.sym).is_full());
    CHECK(s2.alt == build_lie_power(d, p, 2).space);
    const auto s3 = build_sym_alt(d, p, 3);
    CHECK(s3.alt.dim() == binomial(d, 3));
    CHECK(s3.sym.dim() == binomial(d + 2, 3));
    CHECK(s3.mixed.dim() == 2 * witt_dims(d, 3, p));
    CHECK(s3.alt.sum(s3.sym).sum(s3.mixed).is_full());
  }
}

TEST_CASE("A^2V (x) V maps onto L^3V with kernel A^3V equivariantly") {
  for (std::size_t d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const auto rep = testsupport::check_alt2_tensor_v(d, 5, 50, 100 + d);
    CHECK(rep.domain_dim == binomial(d, 2) * d);
    CHECK(rep.rank == witt_dims(d, 3, 5));
    CHECK(rep.kernel_dim == binomial(d, 3));
    CHECK(rep.kernel_matches);
    CHECK(rep.equivariance_failures == 0);
  }
}

TEST_CASE("A^2V (x) S^2V is isomorphic to L^4V for d = 2") {
  for (std::uint32_t p : {5u, 7u}) {
    const auto rep = testsupport::check_alt2_sym2(p, 50, 7);
    CHECK(rep.domain_dim == 3);
    CHECK(rep.rank == 3);
    CHECK(rep.equivariance_failures == 0);
  }
}

TEST_CASE("Lie algebra cache round trip and rejection") {
  const auto dir = std::filesystem::temp_directory_path() / "maxsym_test_cache";
  std::filesystem::remove_all(dir);
  const LieAlgebra built = LieAlgebra::load_or_build(3, 5, 4, dir);
  const auto file = dir / LieAlgebra::cache_file_name(3, 5, 4);
  REQUIRE(std::filesystem::exists(file));
  const auto loaded = LieAlgebra::load(file, 3, 5, 4);
  REQUIRE(loaded.has_value());
  for (std::size_t k = 1; k <= 4; ++k) CHECK(loaded->power(k).space == built.power(k).space);
  CHECK(loaded->table(1, 3) == built.table(1, 3));
  CHECK(loaded->table(2, 2) == built.table(2, 2));

  CHECK_FALSE(LieAlgebra::load(file, 3, 7, 4).has_value());
  CHECK_FALSE(LieAlgebra::load(file, 2, 5, 4).has_value());
  CHECK_FALSE(LieAlgebra::load(dir / "missing.json", 3, 5, 4).has_value());
  {
    std::ofstream out(file, std::ios::trunc);
    out << "{\"format_version\": 1, \"p\": 5";
  }
  CHECK_FALSE(LieAlgebra::load(file, 3, 5, 4).has_value());
  const LieAlgebra rebuilt = LieAlgebra::load_or_build(3, 5, 4, dir);
  CHECK(rebuilt.table(2, 1) == built.table(2, 1));
  CHECK(LieAlgebra::load(file, 3, 5, 4).has_value());
  std::filesystem::remove_all(dir);
}

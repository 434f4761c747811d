#include <doctest.h>

#include <random>

#include "bch_oracle.hpp"
#include "maxsym/gamma_group.hpp"
#include "test_support.hpp"

using namespace maxsym;
using testsupport::random_invertible;

namespace {

bool trivial(const GammaElement& a) {
  for (const auto& v : a.coords)
    if (!testsupport::is_zero(v)) return false;
  return true;
}

Vec scaled_vec(const Vec& v, std::uint64_t c, std::uint32_t p) {
  Vec out(v);
  for (auto& x : out) x = static_cast<Residue>(x * (c % p) % p);
  return out;
}

std::uint64_t closed_form_exponent(std::uint64_t d, std::size_t n) {
  switch (n) {
    case 1: return d;
    case 2: return d * (d + 1) / 2;
    case 3: return d * (d + 1) * (2 * d + 1) / 6;
    default: return d * (d + 1) * (3 * d * d + d + 2) / 12;
  }
}

}  // namespace

TEST_CASE("multiplication agrees with the BCH series") {
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t d : {2u, 3u}) {
      for (std::uint32_t p : {5u, 7u}) {
        CAPTURE(n);
        CAPTURE(d);
        CAPTURE(p);
        const auto ctx = GammaContext::create(d, p, n);
        const testsupport::BchOracle oracle(d, p, n);
        std::mt19937_64 rng(n * 100 + d * 10 + p);
        for (int t = 0; t < 100; ++t) {
          const auto a = ctx.random(rng), b = ctx.random(rng);
          CHECK(multiply(a, b, ctx) == oracle.multiply(a, b, ctx));
        }
      }
    }
}

TEST_CASE("first two coordinates of a product") {
  const auto ctx = GammaContext::create(3, 5, 3);
  const auto& L = ctx.lie();
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto a = ctx.random(rng), b = ctx.random(rng);
    const auto c = multiply(a, b, ctx);
    for (std::size_t i = 0; i < 3; ++i) CHECK(c.coords[0][i] == (a.coords[0][i] + b.coords[0][i]) % 5);
    const Vec br = L.bracket(1, a.coords[0], 1, b.coords[0]);
    for (std::size_t i = 0; i < br.size(); ++i)
      CHECK(c.coords[1][i] == (a.coords[1][i] + b.coords[1][i] + br[i]) % 5);
  }
}

TEST_CASE("group axioms") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto ctx = GammaContext::create(3, 5, n);
    std::mt19937_64 rng(7 + n);
    const auto e = ctx.identity();
    for (int t = 0; t < 200; ++t) {
      const auto a = ctx.random(rng), b = ctx.random(rng), c = ctx.random(rng);
      CHECK(multiply(multiply(a, b, ctx), c, ctx) == multiply(a, multiply(b, c, ctx), ctx));
      CHECK(multiply(a, e, ctx) == a);
      CHECK(multiply(e, a, ctx) == a);
      CHECK(trivial(multiply(a, inverse(a, ctx), ctx)));
      CHECK(trivial(multiply(inverse(a, ctx), a, ctx)));
    }
  }
}

TEST_CASE("powers scale every coordinate and the exponent is p") {
  for (std::uint32_t p : {5u, 7u}) {
    const auto ctx = GammaContext::create(2, p, 4);
    std::mt19937_64 rng(p);
    for (int t = 0; t < 100; ++t) {
      const auto a = ctx.random(rng);
      CHECK(trivial(power(a, p, ctx)));
      CHECK(power(a, 2, ctx) == multiply(a, a, ctx));
      CHECK(power(a, -1, ctx) == inverse(a, ctx));
      for (std::int64_t k : {3, 4, 6, -2}) {
        std::vector<Vec> expected;
        const std::uint64_t kk = static_cast<std::uint64_t>((k % static_cast<std::int64_t>(p) + p) % p);
        for (const auto& v : a.coords) expected.push_back(scaled_vec(v, kk, p));
        CHECK(power(a, k, ctx).coords == expected);
      }
    }
  }
}

TEST_CASE("commutators of maximal length") {
  const std::uint32_t p = 7;
  for (std::size_t n = 2; n <= 4; ++n) {
    const std::uint64_t factor = n == 2 ? 2 : n == 3 ? 12 : 24;
    const auto ctx = GammaContext::create(3, p, n);
    const auto& L = ctx.lie();
    auto expected = [&](const std::vector<GammaElement>& args) {
      std::vector<Vec> firsts;
      for (const auto& g : args) firsts.push_back(g.coords[0]);
      GammaElement out = ctx.identity();
      out.coords.back() = scaled_vec(L.left_normed(firsts), factor, p);
      return out;
    };
    // standard basis tuples
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
      std::vector<GammaElement> args;
      for (auto i : idx) args.push_back(ctx.generator(i));
      CHECK(commutator(args, ctx) == expected(args));
      std::size_t pos = n;
      while (pos > 0 && ++idx[pos - 1] == 3) idx[--pos] = 0;
      if (pos == 0) break;
    }
    std::mt19937_64 rng(n);
    for (int t = 0; t < 100; ++t) {
      std::vector<GammaElement> args;
      for (std::size_t k = 0; k < n; ++k) args.push_back(ctx.random(rng));
      CHECK(commutator(args, ctx) == expected(args));
    }
  }
}

TEST_CASE("order exponents") {
  for (std::size_t d = 1; d <= 6; ++d)
    for (std::size_t n = 1; n <= 4; ++n) {
      if (d == 6 && n == 4) continue;
      const auto ctx = GammaContext::create(d, 5, n);
      CHECK(group_order_exponent(ctx) == closed_form_exponent(d, n));
    }
  CHECK(closed_form_exponent(2, 4) == 8);
}

TEST_CASE("nilpotency class equals n") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t d = 2; d <= 3; ++d) {
      const auto ctx = GammaContext::create(d, 5, n);
      const auto w = nilpotency_class(ctx, 1, 100);
      CHECK(w.nilpotency_class == n);
      CHECK(w.from_standard_basis);
      if (n >= 2) {
        CHECK(w.arguments.size() == n);
        CHECK(commutator(w.arguments, ctx) == w.value);
      }
    }
}

TEST_CASE("quotients by subspaces of the top Lie power") {
  const std::uint32_t p = 5;
  const auto full = GammaContext::create(3, p, 3);
  std::mt19937_64 rng(2);
  // a random proper subspace
  Subspace m(full.dim(3), p);
  for (int k = 0; k < 3; ++k) m.insert(testsupport::random_vec(full.dim(3), p, rng));
  const auto q = full.quotient_by(m);
  CHECK(group_order_exponent(q) == group_order_exponent(full) - m.dim());
  for (int t = 0; t < 200; ++t) {
    auto a = full.random(rng), b = full.random(rng);
    auto prod = multiply(a, b, full);
    prod.coords.back() = m.reduce(prod.coords.back());
    CHECK(multiply(q.make(a.coords), q.make(b.coords), q) == prod);
  }
  const auto w = nilpotency_class(q, 1, 100);
  CHECK(w.nilpotency_class == 3);
  CHECK_FALSE(m.contains(commutator(w.arguments, full).coords.back()));

  const auto top_killed = full.quotient_by(Subspace::full(full.dim(3), p));
  CHECK(nilpotency_class(top_killed, 1, 200).nilpotency_class == 2);
}

TEST_CASE("automorphisms from GL(V)") {
  const std::uint32_t p = 5;
  const auto ctx = GammaContext::create(3, p, 3);
  std::mt19937_64 rng(41);
  const Automorphism id(FpMatrix::identity(3, p), ctx);
  for (int t = 0; t < 100; ++t) {
    const FpMatrix g = random_invertible(3, p, rng), h = random_invertible(3, p, rng);
    const Automorphism ag(g, ctx), ah(h, ctx), agh(g * h, ctx);
    const auto a = ctx.random(rng), b = ctx.random(rng);
    CHECK(ag.apply(multiply(a, b, ctx)) == multiply(ag.apply(a), ag.apply(b), ctx));
    CHECK(ah.apply(ag.apply(a)) == agh.apply(a));
    CHECK(id.apply(a) == a);
    CHECK(Automorphism(invert(g), ctx).apply(ag.apply(a)) == a);
  }
  CHECK_THROWS_AS(Automorphism(FpMatrix(3, 3, p), ctx), SingularMatrixError);
}

TEST_CASE("automorphisms must stabilise the quotient subspace") {
  const std::uint32_t p = 5;
  const auto ctx = GammaContext::create(2, p, 2);
  const auto q = ctx.quotient_by(Subspace::full(1, p));
  CHECK_NOTHROW(Automorphism(FpMatrix::from_rows({{1, 2}, {3, 4}}, p), q));
  const auto c3 = GammaContext::create(2, p, 3);
  Subspace line(c3.dim(3), p);
  line.insert(Vec{1, 0});
  const auto q3 = c3.quotient_by(line);
  // swapping e1 and e2 exchanges [e1,e2,e1] and [e1,e2,e2] up to sign
  const FpMatrix swap = FpMatrix::from_rows({{0, 1}, {1, 0}}, p);
  REQUIRE_FALSE(line.contains(vec_mat(Vec{1, 0}, c3.lie().induced_action(swap, 3))));
  try {
    Automorphism a(swap, q3);
    FAIL("expected NotStabilizingError");
  } catch (const NotStabilizingError& e) {
    CHECK(e.witness() == Vec{1, 0});
  }
  CHECK_NOTHROW(Automorphism(FpMatrix::scalar(2, 2, p), q3));
}

TEST_CASE("elements are validated and serialise to JSON") {
  const auto ctx = GammaContext::create(3, 7, 4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = ctx.random(rng);
    CHECK(element_from_json(element_to_json(a), ctx) == a);
  }
  CHECK_THROWS_AS(ctx.make({Vec{1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(element_from_json("[[1,2],[0,0,0],[0,0,0,0,0,0,0,0],[]]", ctx), std::invalid_argument);
  CHECK_THROWS_AS(GammaContext::create(3, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(GammaContext::create(3, 5, 5), std::invalid_argument);
  const auto other = GammaContext::create(2, 7, 4);
  CHECK_THROWS_AS(multiply(ctx.random(rng), other.identity(), ctx), std::invalid_argument);
}

TEST_CASE("group law verification routine") {
  CHECK(commutator_multiplier(2) == 2);
  CHECK(commutator_multiplier(3) == 12);
  CHECK(commutator_multiplier(4) == 24);
  CHECK_THROWS_AS(commutator_multiplier(5), std::invalid_argument);
  const auto ctx = GammaContext::create(2, 5, 3);
  const auto rep = verify_group_laws(ctx, 40, 9);
  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.all_pass());
  CHECK(rep.checks[0].checked == 40);
  CHECK(rep.checks[2].checked == 8 + 40);  // 2^3 standard-basis tuples
  CHECK_THROWS_AS(verify_group_laws(ctx.quotient_by(Subspace(2, 5)), 1, 1), std::invalid_argument);
}

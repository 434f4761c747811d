#include <doctest.h>

#include <random>

#include "maxsym/lie_powers.hpp"
#include "maxsym/maximal_subgroups.hpp"
#include "maxsym/module.hpp"
#include "module_corpus.hpp"
#include "module_oracle.hpp"
#include "test_support.hpp"

using namespace maxsym;
using testsupport::LatticeOracle;

namespace {

ModuleAction subgroup_power(const std::string& cls, std::vector<std::string> params, std::size_t d, std::size_t n,
                            std::uint32_t p = 5) {
  const auto set = build_generators(SubgroupSpec::parse(cls, params), d, p);
  return lie_power_action(set.gens, LieAlgebra(d, p, n), n);
}

}  // namespace

TEST_CASE("spin and invariance") {
  const std::uint32_t p = 5;
  const auto gl = gl_sl_generators(2, p).gl;
  const LieAlgebra lie(2, p, 3);
  const auto l3 = lie_power_action(gl, lie, 3);
  REQUIRE(l3.dim == 2);
  for (const auto& v : testsupport::all_vectors(2, p)) {
    if (testsupport::is_zero(v)) continue;
    CHECK(spin(l3, {v}).is_full());
  }
  CHECK(is_invariant(l3, Subspace::full(2, p)));
  CHECK(is_invariant(l3, Subspace(2, p)));

  // upper triangular group fixes the first coordinate line
  const auto tri = ModuleAction::make({FpMatrix::from_rows({{1, 0}, {1, 1}}, p)}, 2, p);
  CHECK(spin(tri, {{1, 0}}).dim() == 1);
  CHECK(spin(tri, {{0, 1}}).is_full());
  CHECK_THROWS_AS(ModuleAction::make({FpMatrix::from_rows({{1, 1}, {1, 1}}, p)}, 2, p), SingularMatrixError);
}

TEST_CASE("restriction, quotient and lifting") {
  const std::uint32_t p = 7;
  std::mt19937_64 rng(3);
  const auto gens = testsupport::random_reducible_action(6, p, rng);
  const auto act = ModuleAction::make(gens, 6, p);
  const auto mins = minimal_submodules(act);
  REQUIRE(!mins.modules.empty());
  const Subspace w = mins.modules.front();
  const auto sub = restrict_to(act, w);
  const auto quo = quotient_by(act, w);
  CHECK(sub.dim + quo.dim == act.dim);
  CHECK(is_irreducible(sub).irreducible);
  for (const auto& m : minimal_submodules(quo).modules) {
    const Subspace lifted = lift_from_quotient(w, m);
    CHECK(lifted.dim() == w.dim() + m.dim());
    CHECK(lifted.contains(w));
    CHECK(is_invariant(act, lifted));
  }
  const Subspace whole = embed_from_submodule(w, Subspace::full(w.dim(), p));
  CHECK(whole == w);
}

TEST_CASE("trivial group on a plane has p + 1 maximal submodules") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const auto act = ModuleAction::make({FpMatrix::identity(2, p)}, 2, p);
    const auto maxs = maximal_submodules(act);
    CHECK(maxs.modules.size() == p + 1);
    CHECK(maxs.complete);
    for (const auto& m : maxs.modules) CHECK(m.codim() == 1);
    SearchOptions meataxe;
    meataxe.exhaustive_bound = 0;
    CHECK(maximal_submodules(act, meataxe).modules.size() == p + 1);
  }
}

TEST_CASE("irreducibility examples") {
  const std::uint32_t p = 5;
  const auto gl = gl_sl_generators(3, p).gl;
  const auto l3 = lie_power_action(gl, LieAlgebra(3, p, 3), 3);
  const auto res = is_irreducible(l3);
  CHECK(res.decided);
  CHECK(res.irreducible);

  const auto c3 = subgroup_power("C3", {"r=3"}, 3, 2);
  CHECK(is_irreducible(c3).irreducible);

  // a subspace stabiliser on the natural module: the witness is the subspace
  const auto set = build_generators(SubgroupSpec::parse("C1", {"r=1"}), 3, p);
  const auto natural = ModuleAction::make(set.gens, 3, p);
  const auto red = is_irreducible(natural);
  REQUIRE(red.decided);
  CHECK_FALSE(red.irreducible);
  REQUIRE(red.witness);
  CHECK(*red.witness == *set.object.subspace);

  SearchOptions norton;
  norton.exhaustive_bound = 0;
  const auto big = lie_power_action(gl_sl_generators(4, p).gl, LieAlgebra(4, p, 3), 3);
  const auto nres = is_irreducible(big, norton);
  CHECK(nres.method == "norton");
  CHECK(nres.irreducible);

  CHECK_FALSE(is_irreducible(ModuleAction::make({}, 0, p)).irreducible);
  CHECK(is_irreducible(ModuleAction::make({FpMatrix::identity(1, p)}, 1, p)).irreducible);
}

TEST_CASE("composition factors and homomorphisms") {
  const std::uint32_t p = 5;
  const auto act = subgroup_power("C1", {"r=2"}, 4, 2);
  const auto factors = composition_factors(act);
  std::vector<std::size_t> dims;
  for (const auto& f : factors) dims.push_back(f.dim);
  CHECK(dims == std::vector<std::size_t>{1, 4, 1});
  // the two one-dimensional factors are A^2(U) and A^2(V/U): determinants of different blocks
  CHECK_FALSE(isomorphic_irreducibles(factors.front(), factors.back()));
  for (const auto& f : factors) {
    const auto h = hom_from_irreducible(f, f);
    CHECK(h.dim >= 1);
  }

  // Hom from an irreducible into a direct sum of two copies is twice End
  const auto irr = subgroup_power("C3", {"r=3"}, 3, 2);
  std::vector<FpMatrix> doubled;
  for (const auto& g : irr.gens) {
    FpMatrix m(2 * irr.dim, 2 * irr.dim, p);
    for (std::size_t i = 0; i < irr.dim; ++i)
      for (std::size_t j = 0; j < irr.dim; ++j) m(i, j) = m(irr.dim + i, irr.dim + j) = g(i, j);
    doubled.push_back(m);
  }
  const auto sum = ModuleAction::make(doubled, 2 * irr.dim, p);
  const auto end = hom_from_irreducible(irr, irr);
  const auto hom = hom_from_irreducible(irr, sum);
  CHECK(hom.dim == 2 * end.dim);
  for (const auto& f : hom.maps)
    for (std::size_t k = 0; k < irr.gens.size(); ++k) CHECK(irr.gens[k] * f == f * sum.gens[k]);
}

TEST_CASE("submodule lattice agrees with brute force on random reducible actions") {
  std::mt19937_64 rng(2024);
  SearchOptions meataxe;
  meataxe.exhaustive_bound = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t p = trial % 2 == 0 ? 3 : 7;
    const std::size_t dim = p == 3 ? 3 + trial % 6 : 2 + trial % 5;
    const auto gens = testsupport::random_reducible_action(dim, p, rng);
    const auto act = ModuleAction::make(gens, dim, p);
    const LatticeOracle oracle(gens, dim, p);
    const auto want_min = oracle.minimal();
    const auto want_max = oracle.maximal();
    CAPTURE(trial);
    CAPTURE(dim);

    const auto fast = minimal_submodules(act, meataxe);
    CHECK(fast.strategy == "meataxe");
    CHECK(fast.complete);
    CHECK(testsupport::as_bases(fast.modules) == want_min);
    CHECK(testsupport::as_bases(minimal_submodules_exhaustive(act).modules) == want_min);
    const auto maxs = maximal_submodules(act, meataxe);
    CHECK(testsupport::as_bases(maxs.modules) == want_max);
    for (const auto& m : maxs.modules) CHECK(is_invariant(act, m));

    std::size_t smallest = dim;
    for (const auto& m : want_max) smallest = std::min(smallest, dim - m.size());
    CHECK(smallest_quotient_dim(act, meataxe).dim == smallest);

    std::size_t total = 0;
    for (const auto& f : composition_factors(act, meataxe)) {
      CHECK(is_irreducible(f).irreducible);
      total += f.dim;
    }
    CHECK(total == dim);
  }
}

TEST_CASE("maximal submodules are annihilators of the dual's minimal ones") {
  const auto act = subgroup_power("C1", {"r=2"}, 4, 2);
  const auto maxs = maximal_submodules(act);
  const auto dual_mins = minimal_submodules(dual(act));
  REQUIRE(maxs.modules.size() == dual_mins.modules.size());
  for (const auto& w : dual_mins.modules) {
    const Subspace ann = w.annihilator();
    CHECK(std::find(maxs.modules.begin(), maxs.modules.end(), ann) != maxs.modules.end());
    CHECK(is_invariant(act, ann));
  }
  // the dual of the dual is the original action
  const auto dd = dual(dual(act));
  for (std::size_t i = 0; i < act.gens.size(); ++i) CHECK(dd.gens[i] == act.gens[i]);
}

TEST_CASE("structure summaries") {
  const auto c1 = subgroup_power("C1", {"r=2"}, 4, 2);
  const auto s1 = classify_structure(c1);
  CHECK(s1.uniserial);
  CHECK_FALSE(s1.completely_reducible);
  CHECK(s1.composition_length == 3);
  CHECK(maximal_submodules(c1).modules.size() == 1);
  CHECK(smallest_quotient_dim(c1).dim == 1);

  const auto c2 = subgroup_power("C2", {"r=2"}, 4, 2);
  const auto s2 = classify_structure(c2);
  CHECK(s2.completely_reducible);
  CHECK_FALSE(s2.uniserial);
  CHECK(s2.socle_dim == 6);

  const auto sp = subgroup_power("C8", {"form=symplectic"}, 4, 2);
  const auto maxs = maximal_submodules(sp);
  REQUIRE(!maxs.modules.empty());
  CHECK(maxs.modules.front().codim() == 1);
  CHECK_THROWS_AS(smallest_quotient_dim(ModuleAction::make({}, 0, 5)), std::invalid_argument);
}

TEST_CASE("smallest quotients of selected restrictions") {
  CHECK(smallest_quotient_dim(subgroup_power("C1", {"r=2"}, 5, 2)).dim == 3);
  CHECK(smallest_quotient_dim(subgroup_power("C8", {"form=symplectic"}, 4, 2)).dim == 1);
  CHECK(smallest_quotient_dim(subgroup_power("C7", {"t=3", "r=2"}, 9, 3)).dim == 16);
}

TEST_CASE("GL invariance witnesses") {
  const std::uint32_t p = 5;
  const LieAlgebra lie(3, p, 2);
  CHECK(gl_invariance_witness(Subspace::full(3, p), lie, 2).invariant);
  CHECK(gl_invariance_witness(Subspace(3, p), lie, 2).invariant);
  const auto w = gl_invariance_witness(Subspace::span({{1, 0, 0}}, 3, p), lie, 2);
  CHECK_FALSE(w.invariant);
  REQUIRE(w.gl_witness);
  REQUIRE(w.sl_witness);
  const FpMatrix a = lie.induced_action(*w.sl_witness, 2);
  CHECK_FALSE(Subspace::span({{1, 0, 0}}, 3, p).contains(vec_mat(Vec{1, 0, 0}, a)));
}

TEST_CASE("Lie power restrictions to maximal subgroups") {
  for (const auto& e : testsupport::module_corpus()) {
    CAPTURE(e.name);
    const auto out = testsupport::evaluate_entry(e);
    CAPTURE(out.detail);
    CAPTURE(out.quotient);
    CHECK(out.pass);
  }
}

TEST_CASE("tensor-induced cube splits as predicted") {
  for (std::size_t t : {2, 3}) {
    const std::size_t a = (t + 2) * (t + 1) * t / 6, b = (t + 1) * t * (t - 1) / 3, c = t * (t - 1) * (t - 2) / 6;
    const std::size_t d = t * t;
    const LieAlgebra lie(d, 5, 3);
    CHECK(lie.dim(3) == (d * d * d - d) / 3);
    std::vector<std::size_t> expected;
    for (std::size_t v : {2 * a * b, 2 * b * c, b * b})
      if (v) expected.push_back(v);
    std::sort(expected.begin(), expected.end());
    const auto act = subgroup_power("C7", {"t=" + std::to_string(t), "r=2"}, d, 3);
    const auto mins = minimal_submodules(act);
    std::vector<std::size_t> got;
    std::size_t total = 0;
    for (const auto& m : mins.modules) {
      got.push_back(m.dim());
      total += m.dim();
    }
    CHECK(got == expected);
    CHECK(total == lie.dim(3));  // semisimple
  }
}

#include <doctest.h>

#include <random>

#include "json.hpp"
#include "maxsym/lie_powers.hpp"
#include "maxsym/pipeline.hpp"

using namespace maxsym;

namespace {

SubgroupSpec spec(const std::string& cls, std::vector<std::string> params) { return SubgroupSpec::parse(cls, params); }

/// Subspace of L^2 cut out by linear conditions on its tensor coordinates.
Subspace lie_square_kernel(const LieAlgebra& lie, const std::vector<Vec>& functionals) {
  const std::size_t dim = lie.dim(2);
  FpMatrix cond(dim, functionals.size(), lie.p());
  for (std::size_t b = 0; b < dim; ++b) {
    Vec e(dim, 0);
    e[b] = 1;
    const Vec t = lie.to_tensor(2, e);
    for (std::size_t f = 0; f < functionals.size(); ++f) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < t.size(); ++k) s += std::uint64_t{t[k]} * functionals[f][k];
      cond(b, f) = s % lie.p();
    }
  }
  return Subspace::span(nullspace(cond));
}

/// Functional picking out the (i, j) tensor coordinate.
Vec coordinate(std::size_t d, std::size_t i, std::size_t j) {
  Vec f(d * d, 0);
  f[i * d + j] = 1;
  return f;
}

}  // namespace

TEST_CASE("published expectations") {
  CHECK(table2_expectation(spec("C4", {"d1=2", "d2=3"}), 6).n == 2);
  CHECK(table2_expectation(spec("C4", {"d1=2", "d2=3"}), 6).values.front() == 6);
  CHECK(table2_expectation(spec("C2", {"r=2"}), 2).n == 4);
  CHECK(table2_expectation(spec("C1", {"r=1"}), 2).n == 3);
  CHECK(table2_expectation(spec("C2", {"r=5"}), 5).values.front() == 20);
  CHECK(table2_expectation(spec("C2", {"r=4"}), 4).values.front() == 8);
  CHECK(table2_expectation(spec("C7", {"t=3", "r=2"}), 9).values.front() == 16);
  CHECK(table2_expectation(spec("C7", {"t=2", "r=3"}), 8).values.front() == 1);
  CHECK(table2_expectation(spec("C7", {"t=2", "r=4"}), 16).values.front() == 4 * 1 * 3);
  CHECK(table2_expectation(spec("C3", {"r=3"}), 3).relation == Relation::AtMost);
  const auto go = table2_expectation(spec("C8", {"form=orthogonal-odd"}), 5);
  CHECK(go.relation == Relation::OneOf);
  CHECK(go.values == std::vector<std::size_t>{1, 5});

  const Expectation e{2, {3}, Relation::AtMost, ""};
  CHECK(compare_with_expectation(e, 2, 3) == Match::WithinBound);
  CHECK(compare_with_expectation(e, 2, 4) == Match::Mismatch);
  CHECK(compare_with_expectation(e, 3, 1) == Match::Mismatch);
}

TEST_CASE("critical powers") {
  CHECK(find_critical_power(build_generators(spec("C4", {"d1=2", "d2=3"}), 6, 5)) == 2);
  CHECK(find_critical_power(build_generators(spec("C2", {"r=2"}), 2, 5)) == 4);
  CHECK(find_critical_power(build_generators(spec("C1", {"r=1"}), 2, 5)) == 3);
  CHECK(find_critical_power(build_generators(spec("C1", {"r=1"}), 3, 5)) == 2);
}

TEST_CASE("choice of M") {
  const std::uint32_t p = 5;
  const LieAlgebra lie(4, p, 2);

  SUBCASE("symplectic: kernel of the form contraction") {
    const auto set = build_generators(spec("C8", {"form=symplectic"}), 4, p);
    const auto c = choose_M(lie_power_action(set.gens, lie, 2), lie, 2);
    Vec contraction(16, 0);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) contraction[i * 4 + j] = set.object.form->gram(i, j);
    CHECK(c.m.codim() == 1);
    CHECK(c.m == lie_square_kernel(lie, {contraction}));
  }
  SUBCASE("subspace stabiliser: U wedge V") {
    const auto set = build_generators(spec("C1", {"r=2"}), 4, p);
    const auto c = choose_M(lie_power_action(set.gens, lie, 2), lie, 2);
    CHECK(c.m.codim() == 1);
    CHECK(c.m == lie_square_kernel(lie, {coordinate(4, 2, 3)}));
    CHECK(c.candidates.size() == 1);
  }
  SUBCASE("imprimitive: the cross-block summand") {
    const auto set = build_generators(spec("C2", {"r=2"}), 4, p);
    const auto c = choose_M(lie_power_action(set.gens, lie, 2), lie, 2);
    CHECK(c.m.codim() == 2);
    CHECK(c.m == lie_square_kernel(lie, {coordinate(4, 0, 1), coordinate(4, 2, 3)}));
    CHECK(c.invariance.sl_witness.has_value());
  }
}

TEST_CASE("constructed orders") {
  const auto sp = construct_group(spec("C8", {"form=symplectic"}), 4, 5);
  CHECK(sp.n == 2);
  CHECK(sp.top_dim == 1);
  CHECK(sp.order_exponent == 5);
  CHECK(sp.verification.all_pass());
  CHECK(sp.match == Match::Equal);

  const auto c2 = construct_group(spec("C2", {"r=2"}), 2, 5);
  CHECK(c2.n == 4);
  CHECK(c2.top_dim == 1);
  CHECK(c2.order_exponent == 2 + 1 + 2 + 1);
  CHECK(group_order_exponent(*c2.group) == 6);

  const auto c1 = construct_group(spec("C1", {"r=1"}), 3, 5);
  CHECK(c1.n == 2);
  CHECK(c1.order_exponent == 4);
  CHECK(c1.structure.uniserial);

  CHECK_THROWS_AS(construct_group(spec("C1", {"r=1"}), 3, 3), std::invalid_argument);
}

TEST_CASE("report invariants") {
  for (const auto& inst : table2_instances(5)) {
    CAPTURE(inst.spec.label());
    const auto r = construct_group(inst.spec, inst.d, 5);
    const LieAlgebra lie(inst.d, 5, r.n);
    std::size_t m = 0;
    for (std::size_t i = 1; i < r.n; ++i) m += witt_dims(inst.d, i, 5);
    m += witt_dims(inst.d, r.n, 5) - r.m_basis.dim();
    CHECK(r.order_exponent == m);
    CHECK(2 * r.order_exponent <= inst.d * inst.d * inst.d * inst.d);
    CHECK(r.h_invariance);
    CHECK(r.class_verified);
    CHECK(r.exponent_sampled);
    CHECK(r.sl_witness.has_value());
    CHECK(r.match != Match::Mismatch);
    // H stabilises M on the critical power; an SL generator does not
    for (const auto& g : r.subgroup.gens) {
      const FpMatrix a = lie.induced_action(g, r.n);
      for (const auto& row : r.m_basis.rows()) CHECK(r.m_basis.contains(vec_mat(row, a)));
    }
    const FpMatrix s = lie.induced_action(*r.sl_witness, r.n);
    bool moved = false;
    for (const auto& row : r.m_basis.rows()) moved = moved || !r.m_basis.contains(vec_mat(row, s));
    CHECK(moved);
  }
}

TEST_CASE("tampered certificates fail") {
  const auto r = construct_group(spec("C2", {"r=2"}), 4, 5);
  REQUIRE(r.verification.all_pass());

  SUBCASE("M enlarged by an outside vector") {
    ConstructionReport t = r;
    std::mt19937_64 rng(5);
    Vec v;
    do {
      v.assign(r.m_basis.ambient_dim(), 0);
      for (auto& x : v) x = rng() % 5;
    } while (r.m_basis.contains(v));
    Subspace bigger = r.m_basis;
    bigger.insert(v);
    t.m_basis = bigger;
    const auto rec = verify_certificate(t, *r.group);
    CHECK_FALSE(rec.checks.at(0).pass);
    CHECK(rec.checks.at(0).name == "h_invariance");
    CHECK_FALSE(rec.checks.at(0).witness.empty());
  }
  SUBCASE("M replaced by the whole power") {
    ConstructionReport t = r;
    t.m_basis = Subspace::full(r.m_basis.ambient_dim(), 5);
    const GammaContext ctx = r.group->quotient_by(t.m_basis);
    const auto rec = verify_certificate(t, ctx);
    CHECK(rec.checks.at(2).name == "nilpotency_class");
    CHECK_FALSE(rec.checks.at(2).pass);
    CHECK(nlohmann::json::parse(rec.checks.at(2).witness).at("class") == r.n - 1);
  }
}

TEST_CASE("reports are deterministic and serialise") {
  const auto a = construct_group(spec("C7", {"t=2", "r=2"}), 4, 5);
  const auto b = construct_group(spec("C7", {"t=2", "r=2"}), 4, 5);
  const std::string ja = report_to_json(a);
  CHECK(ja == report_to_json(b));
  const auto j = nlohmann::json::parse(ja);
  CHECK(j.at("header").at("format_version") == 1);
  CHECK(j.at("header").at("spec").at("class") == "C7");
  CHECK(j.at("body").at("n") == 3);
  CHECK(j.at("body").at("m") == a.order_exponent);
  CHECK(j.at("body").at("checks").size() == 5);
  CHECK(j.at("body").at("table2").at("relation") == "=");
  CHECK(j.at("body").at("M_basis").size() == a.m_basis.dim());
  CHECK(j.dump(2) == ja);
}

TEST_CASE("table rows") {
  CHECK(table2_instances(1).empty());
  CHECK(run_table2(5, 1).empty());
  const auto serial = run_table2(5, 4);
  const auto parallel = run_table2(5, 4, {}, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(serial[i].instance.spec.label());
    CHECK(serial[i].error.empty());
    CHECK(serial[i].match != Match::Mismatch);
    CHECK(serial[i].verified);
    CHECK(serial[i].instance.spec == parallel[i].instance.spec);
    CHECK(serial[i].top_dim == parallel[i].top_dim);
    CHECK(serial[i].order_exponent == parallel[i].order_exponent);
  }
}

#include "maxsym/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "maxsym/lie_powers.hpp"

namespace maxsym {

namespace {

using nlohmann::json;

std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }
std::size_t choose3(std::size_t n) { return n < 3 ? 0 : n * (n - 1) * (n - 2) / 6; }
std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

json matrix_json(const FpMatrix& m) { return m.to_rows(); }

json element_json(const GammaElement& a) { return json::parse(element_to_json(a)); }

struct CriticalPower {
  std::size_t n = 0;
  std::shared_ptr<const LieAlgebra> lie;
};

CriticalPower critical_power(const GeneratorSet& set, const PipelineOptions& opts) {
  const std::size_t first = set.spec.cls == SubgroupClass::C1 ? 2 : 1;
  for (std::size_t k = std::max<std::size_t>(first, 2); k <= 4; ++k) {
    if (set.p <= k) break;
    auto lie = std::make_shared<const LieAlgebra>(LieAlgebra::load_or_build(set.d, set.p, k, opts.cache_dir));
    if (k == 2 && first == 1) {
      const auto natural = is_irreducible(ModuleAction::make(set.gens, set.d, set.p), opts.search);
      if (!natural.decided || !natural.irreducible)
        throw std::logic_error("find_critical_power: " + set.spec.label() + " is reducible on the natural module");
    }
    const auto res = is_irreducible(lie_power_action(set.gens, *lie, k), opts.search);
    if (!res.decided)
      throw std::runtime_error("find_critical_power: irreducibility undecided in degree " + std::to_string(k));
    if (!res.irreducible) return {k, std::move(lie)};
  }
  throw std::logic_error("find_critical_power: " + set.spec.label() + " is irreducible on every Lie power up to 4");
}

CertificateCheck check_h_invariance(const ConstructionReport& report, const LieAlgebra& lie) {
  CertificateCheck c{"h_invariance", true, ""};
  for (std::size_t i = 0; i < report.subgroup.gens.size() && c.pass; ++i) {
    const FpMatrix a = lie.induced_action(report.subgroup.gens[i], report.n);
    for (const auto& row : report.m_basis.rows()) {
      const Vec image = vec_mat(row, a);
      if (!report.m_basis.contains(image)) {
        c.pass = false;
        c.witness = json{{"generator", i}, {"vector", row}, {"image", image}}.dump();
        break;
      }
    }
  }
  return c;
}

}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equal: return "=";
    case Relation::AtMost: return "<=";
    case Relation::OneOf: return "in";
  }
  return "?";
}

std::string to_string(Match m) {
  switch (m) {
    case Match::Equal: return "=";
    case Match::WithinBound: return "<=";
    case Match::Mismatch: return "mismatch";
  }
  return "?";
}

Expectation table2_expectation(const SubgroupSpec& spec, std::size_t d) {
  const std::size_t r = spec.r;
  switch (spec.cls) {
    case SubgroupClass::C1:
      if (d == 2 && r == 1) return {3, {1}, Relation::Equal, "(d,r)=(2,1)"};
      if (r == d - 1) return {2, {r}, Relation::Equal, "1<r=d-1"};
      return {2, {choose2(d - r)}, Relation::Equal, "r<d-1"};
    case SubgroupClass::C2:
      if (r < d) return {2, {r * choose2(d / r)}, Relation::Equal, "1<r<d"};
      if (d > 4) return {3, {d * (d - 1)}, Relation::Equal, "4<r=d"};
      if (d > 2) return {3, {2 * choose3(d)}, Relation::Equal, "r=d in {3,4}"};
      return {4, {1}, Relation::Equal, "2=r=d"};
    case SubgroupClass::C3:
      if (r < d) return {2, {r * choose2(d / r)}, Relation::AtMost, "1<r<d"};
      if (d > 3) return {2, {d}, Relation::Equal, "3<r=d"};
      if (d == 3) return {3, {3}, Relation::AtMost, "3=r=d"};
      return {4, {2}, Relation::AtMost, "2=r=d"};
    case SubgroupClass::C4:
      return {2, {choose2(spec.d1) * choose2(spec.d2 + 1)}, Relation::Equal, "d=d1*d2"};
    case SubgroupClass::C7: {
      const std::size_t t = spec.t;
      if (spec.r > 2 && spec.r % 2 == 1) return {2, {ipow(choose2(t), spec.r)}, Relation::Equal, "r>2 odd"};
      if (spec.r > 2)
        return {2, {spec.r * ipow(choose2(t), spec.r - 1) * choose2(t + 1)}, Relation::Equal, "r>2 even"};
      if (t == 2) return {3, {4}, Relation::Equal, "r=2, t=2"};
      return {3, {(t + 1) * t * t * (t - 1) * (t - 1) * (t - 2) / 9}, Relation::Equal, "r=2, t>2"};
    }
    case SubgroupClass::C8:
      if (spec.form == FormKind::Symplectic) return {2, {1}, Relation::Equal, "conformal symplectic"};
      return {3, {1, d}, Relation::OneOf, "conformal orthogonal"};
  }
  throw std::invalid_argument("table2_expectation: unsupported class");
}

Match compare_with_expectation(const Expectation& e, std::size_t n, std::size_t top_dim) {
  if (n != e.n) return Match::Mismatch;
  switch (e.relation) {
    case Relation::Equal: return top_dim == e.values.front() ? Match::Equal : Match::Mismatch;
    case Relation::AtMost: return top_dim <= e.values.front() ? Match::WithinBound : Match::Mismatch;
    case Relation::OneOf:
      return std::find(e.values.begin(), e.values.end(), top_dim) != e.values.end() ? Match::Equal : Match::Mismatch;
  }
  return Match::Mismatch;
}

std::size_t find_critical_power(const GeneratorSet& set, const PipelineOptions& opts) {
  return critical_power(set, opts).n;
}

MChoice choose_M(const ModuleAction& action, const LieAlgebra& lie, std::size_t n, const SearchOptions& opts) {
  const auto maxs = maximal_submodules(action, opts);
  MChoice out;
  out.candidates = maxs.modules;
  out.complete = maxs.complete;
  for (const auto& m : maxs.modules) {
    auto inv = gl_invariance_witness(m, lie, n);
    if (inv.sl_witness) {
      out.m = m;
      out.invariance = std::move(inv);
      return out;
    }
  }
  std::string codims;
  for (const auto& m : maxs.modules) codims += (codims.empty() ? "" : ",") + std::to_string(m.codim());
  throw std::logic_error("choose_M: all " + std::to_string(maxs.modules.size()) +
                         " maximal submodules (codims " + codims + ") are SL-invariant");
}

bool VerificationRecord::all_pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

VerificationRecord verify_certificate(const ConstructionReport& report, const GammaContext& ctx,
                                      const PipelineOptions& opts) {
  VerificationRecord rec;
  const LieAlgebra& lie = ctx.lie();

  rec.checks.push_back(check_h_invariance(report, lie));

  {
    CertificateCheck c{"sl_non_invariance", false, ""};
    const auto inv = gl_invariance_witness(report.m_basis, lie, report.n);
    if (inv.sl_witness) {
      c.pass = true;
      c.witness = json{{"generator", matrix_json(*inv.sl_witness)}}.dump();
    }
    rec.checks.push_back(c);
  }

  {
    CertificateCheck c{"nilpotency_class", false, ""};
    const auto cw = nilpotency_class(ctx, opts.seed);
    c.pass = cw.nilpotency_class == report.n;
    json w{{"class", cw.nilpotency_class}, {"from_standard_basis", cw.from_standard_basis}};
    auto& args = w["arguments"] = json::array();
    for (const auto& a : cw.arguments) args.push_back(element_json(a));
    if (!cw.arguments.empty()) w["commutator"] = element_json(cw.value);
    c.witness = w.dump();
    rec.checks.push_back(c);
  }

  {
    CertificateCheck c{"exponent_p", true, ""};
    std::mt19937_64 rng(opts.seed);
    const GammaElement e = ctx.identity();
    for (std::size_t i = 0; i < opts.exponent_samples; ++i) {
      const GammaElement a = ctx.random(rng);
      if (power(a, ctx.p(), ctx) != e) {
        c.pass = false;
        c.witness = json{{"element", element_json(a)}}.dump();
        break;
      }
    }
    if (c.pass) c.witness = json{{"samples", opts.exponent_samples}}.dump();
    rec.checks.push_back(c);
  }

  {
    std::size_t lower = 0;
    for (std::size_t i = 1; i < report.n; ++i) lower += lie.dim(i);
    const std::size_t formula = lower + report.m_basis.codim();
    const std::size_t counted = group_order_exponent(ctx);
    const std::size_t d4 = ipow(report.d, 4);
    CertificateCheck c{"order_bound", formula == report.order_exponent && counted == formula && 2 * formula <= d4, ""};
    c.witness = json{{"m", report.order_exponent}, {"formula", formula}, {"context", counted}, {"bound", d4 / 2.0}}.dump();
    rec.checks.push_back(c);
  }
  return rec;
}

ConstructionReport construct_group(const SubgroupSpec& spec, std::size_t d, std::uint32_t p,
                                   const PipelineOptions& opts) {
  if (p < 5) throw std::invalid_argument("construct_group: p must be at least 5");
  ConstructionReport r;
  r.subgroup = build_generators(spec, d, p);
  r.p = p;
  r.d = d;
  r.expected = table2_expectation(spec, d);
  const auto crit = critical_power(r.subgroup, opts);
  r.n = crit.n;
  const ModuleAction action = lie_power_action(r.subgroup.gens, *crit.lie, r.n);
  const MChoice choice = choose_M(action, *crit.lie, r.n, opts.search);
  r.m_basis = choice.m;
  r.sl_witness = choice.invariance.sl_witness;
  r.top_dim = choice.m.codim();
  r.search_complete = choice.complete;
  r.order_exponent = r.top_dim;
  for (std::size_t i = 1; i < r.n; ++i) r.order_exponent += crit.lie->dim(i);
  r.structure = classify_structure(action, opts.search);
  r.group = std::make_shared<const GammaContext>(crit.lie, r.n, choice.m);
  r.verification = verify_certificate(r, *r.group, opts);
  for (const auto& c : r.verification.checks) {
    if (c.name == "h_invariance") r.h_invariance = c.pass;
    if (c.name == "nilpotency_class") r.class_verified = c.pass;
    if (c.name == "exponent_p") r.exponent_sampled = c.pass;
  }
  r.match = compare_with_expectation(r.expected, r.n, r.top_dim);
  return r;
}

std::string report_to_json(const ConstructionReport& r, int indent) {
  json j;
  j["header"] = {{"format_version", 1},
                 {"p", r.p},
                 {"d", r.d},
                 {"spec", {{"class", to_string(r.subgroup.spec.cls)}, {"params", r.subgroup.spec.params()},
                           {"label", r.subgroup.spec.label()}}}};
  json body;
  body["n"] = r.n;
  body["M_basis"] = r.m_basis.rows();
  body["M_dim"] = r.m_basis.dim();
  body["m"] = r.order_exponent;
  body["order"] = std::to_string(r.p) + "^" + std::to_string(r.order_exponent);
  body["class_verified"] = r.class_verified;
  body["exponent_sampled"] = r.exponent_sampled;
  body["h_invariance"] = r.h_invariance;
  body["sl_witness"] = r.sl_witness ? matrix_json(*r.sl_witness) : json(nullptr);
  auto& checks = body["checks"] = json::array();
  for (const auto& c : r.verification.checks) {
    json item{{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) item["witness"] = json::parse(c.witness);
    checks.push_back(item);
  }
  body["table2"] = {{"expected", r.expected.values},
                    {"expected_relation", to_string(r.expected.relation)},
                    {"expected_n", r.expected.n},
                    {"conditions", r.expected.conditions},
                    {"computed", r.top_dim},
                    {"relation", to_string(r.match)}};
  body["structure"] = {{"completely_reducible", r.structure.completely_reducible},
                       {"uniserial", r.structure.uniserial},
                       {"socle_dim", r.structure.socle_dim},
                       {"composition_length", r.structure.composition_length}};
  body["search_complete"] = r.search_complete;
  j["body"] = body;
  return j.dump(indent);
}

std::vector<Table2Instance> table2_instances(std::size_t d_max) {
  const std::vector<std::pair<std::size_t, std::pair<std::string, std::vector<std::string>>>> all = {
      {2, {"C1", {"r=1"}}},  {3, {"C1", {"r=1"}}},  {3, {"C1", {"r=2"}}},       {4, {"C1", {"r=2"}}},
      {5, {"C1", {"r=2"}}},  {4, {"C2", {"r=2"}}},  {3, {"C2", {"r=3"}}},       {4, {"C2", {"r=4"}}},
      {2, {"C2", {"r=2"}}},  {5, {"C2", {"r=5"}}},  {4, {"C3", {"r=2"}}},       {5, {"C3", {"r=5"}}},
      {3, {"C3", {"r=3"}}},  {2, {"C3", {"r=2"}}},  {6, {"C4", {"d1=2", "d2=3"}}}, {8, {"C7", {"t=2", "r=3"}}},
      {4, {"C7", {"t=2", "r=2"}}}, {9, {"C7", {"t=3", "r=2"}}}, {4, {"C8", {"form=symplectic"}}},
      {3, {"C8", {"form=orthogonal-odd"}}}, {4, {"C8", {"form=orthogonal-plus"}}},
      {4, {"C8", {"form=orthogonal-minus"}}}, {5, {"C8", {"form=orthogonal-odd"}}},
  };
  std::vector<Table2Instance> out;
  for (const auto& [d, tag] : all)
    if (d <= d_max) out.push_back({SubgroupSpec::parse(tag.first, tag.second), d});
  return out;
}

std::vector<Table2Row> run_table2(std::uint32_t p, std::size_t d_max, const PipelineOptions& opts, unsigned threads) {
  const auto instances = table2_instances(d_max);
  std::vector<Table2Row> rows(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      Table2Row& row = rows[i];
      row.instance = instances[i];
      try {
        row.expected = table2_expectation(row.instance.spec, row.instance.d);
        const auto rep = construct_group(row.instance.spec, row.instance.d, p, opts);
        row.n = rep.n;
        row.top_dim = rep.top_dim;
        row.order_exponent = rep.order_exponent;
        row.match = rep.match;
        row.verified = rep.verification.all_pass();
        row.search_complete = rep.search_complete;
      } catch (const std::exception& e) {
        row.error = e.what();
        row.match = Match::Mismatch;
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace maxsym

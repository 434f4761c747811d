#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxsym/gamma_group.hpp"
#include "maxsym/lie_powers.hpp"
#include "maxsym/maximal_subgroups.hpp"
#include "maxsym/module.hpp"
#include "maxsym/pipeline.hpp"

using namespace maxsym;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;
constexpr int kIncomplete = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint32_t p = 5;
  std::size_t d = 0;
  std::string format = "table";
  std::uint64_t seed = 1;
  std::optional<std::size_t> exhaustive_bound;
  std::string out;
};

struct SpecArgs {
  std::string cls;
  std::vector<std::string> params;
};

std::filesystem::path cache_dir() {
  const char* env = std::getenv("MAXSYM_CACHE_DIR");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path(".cache");
}

SearchOptions search_options(const Common& c) {
  SearchOptions s;
  s.seed = c.seed;
  if (c.exhaustive_bound) s.exhaustive_bound = *c.exhaustive_bound;
  return s;
}

PipelineOptions pipeline_options(const Common& c) {
  PipelineOptions o;
  o.search = search_options(c);
  o.seed = c.seed;
  o.cache_dir = cache_dir();
  return o;
}

/// Parses and validates before any computation.
GeneratorSet subgroup(const Common& c, const SpecArgs& s) {
  try {
    return build_generators(SubgroupSpec::parse(s.cls, s.params), c.d, c.p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// Fixed-width ASCII table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& r : rows_)
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        os << (i ? "  " : "");
        if (i + 1 < r.size())
          os << std::left << std::setw(static_cast<int>(width[i])) << r[i];
        else
          os << r[i];
      }
      os << '\n';
    };
    line(rows_.front());
    std::vector<std::string> rule;
    for (auto w : width) rule.push_back(std::string(w, '-'));
    line(rule);
    for (std::size_t i = 1; i < rows_.size(); ++i) line(rows_[i]);
    return os.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

std::string join(const std::vector<std::size_t>& xs, const std::string& sep = ",") {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : sep) + std::to_string(x);
  return s;
}

int cmd_witt(const Common& c, std::size_t max_n) {
  if (c.d < 1) throw UsageError("--d must be positive");
  if (c.p <= max_n) throw UsageError("p must exceed --max-n");
  json rows = json::array();
  Table t({"k", "lie", "alt", "sym"});
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= max_n; ++k) {
    const auto lie = witt_dims(c.d, k, c.p);
    const auto alt = binomial(c.d, k);
    const auto sym = binomial(c.d + k - 1, k);
    total += lie;
    rows.push_back({{"k", k}, {"lie", lie}, {"alt", alt}, {"sym", sym}});
    t.add({std::to_string(k), std::to_string(lie), std::to_string(alt), std::to_string(sym)});
  }
  if (c.format == "json")
    emit(c, json{{"p", c.p}, {"d", c.d}, {"rows", rows}, {"lie_total", total}}.dump(2) + "\n");
  else
    emit(c, t.str() + "total lie dimension " + std::to_string(total) + "\n");
  return kOk;
}

int cmd_gamma_verify(const Common& c, std::size_t n, std::size_t trials) {
  if (n < 2 || n > 4) throw UsageError("--n must be 2, 3 or 4");
  if (c.p <= n) throw UsageError("p must exceed n");
  if (c.d < 1) throw UsageError("--d must be positive");
  const auto lie = std::make_shared<const LieAlgebra>(LieAlgebra::load_or_build(c.d, c.p, n, cache_dir()));
  const GammaContext ctx(lie, n);
  const auto report = verify_group_laws(ctx, trials, c.seed);
  const auto mult = commutator_multiplier(n);
  if (c.format == "json") {
    json checks = json::array();
    for (const auto& k : report.checks) {
      json item{{"name", k.name}, {"checked", k.checked}, {"failures", k.failures}};
      if (!k.first_failure.empty()) item["first_failure"] = json::parse(k.first_failure);
      checks.push_back(item);
    }
    emit(c, json{{"p", c.p}, {"d", c.d}, {"n", n}, {"trials", trials}, {"seed", c.seed},
                 {"commutator_multiplier", mult}, {"checks", checks}, {"pass", report.all_pass()}}
                    .dump(2) + "\n");
  } else {
    Table t({"check", "checked", "failures"});
    for (const auto& k : report.checks)
      t.add({k.name == "commutator" ? "commutator = " + std::to_string(mult) + " x bracket" : k.name,
             std::to_string(k.checked), std::to_string(k.failures)});
    std::string text = t.str();
    for (const auto& k : report.checks)
      if (!k.first_failure.empty()) text += "first failing " + k.name + ": " + k.first_failure + "\n";
    text += report.all_pass() ? "all checks passed\n" : "FAILED\n";
    emit(c, text);
  }
  return report.all_pass() ? kOk : kVerificationFailed;
}

int cmd_decompose(const Common& c, const SpecArgs& s, std::size_t power) {
  const auto set = subgroup(c, s);
  if (power < 1 || power >= c.p) throw UsageError("--power must lie in [1, p)");
  const LieAlgebra lie = LieAlgebra::load_or_build(c.d, c.p, power, cache_dir());
  const auto opts = search_options(c);
  const ModuleAction action = lie_power_action(set.gens, lie, power);
  const auto mins = minimal_submodules(action, opts);
  const auto maxs = maximal_submodules(action, opts);
  const auto quotient = smallest_quotient_dim(action, opts);
  const bool complete = mins.complete && maxs.complete;

  json jmin = json::array(), jmax = json::array();
  Table t({"kind", "dim", "codim", "gl_invariant"});
  for (const auto& m : mins.modules) {
    const bool inv = gl_invariance_witness(m, lie, power).invariant;
    jmin.push_back({{"dim", m.dim()}, {"gl_invariant", inv}});
    t.add({"minimal", std::to_string(m.dim()), std::to_string(m.codim()), inv ? "yes" : "no"});
  }
  for (const auto& m : maxs.modules) {
    const bool inv = gl_invariance_witness(m, lie, power).invariant;
    jmax.push_back({{"codim", m.codim()}, {"gl_invariant", inv}});
    t.add({"maximal", std::to_string(m.dim()), std::to_string(m.codim()), inv ? "yes" : "no"});
  }
  if (c.format == "json") {
    emit(c, json{{"p", c.p}, {"d", c.d}, {"spec", set.spec.label()}, {"power", power}, {"dim", action.dim},
                 {"minimal", jmin}, {"maximal", jmax}, {"smallest_quotient", quotient.dim},
                 {"strategy", mins.strategy}, {"complete", complete}}
                    .dump(2) + "\n");
  } else {
    std::vector<std::size_t> dims;
    for (const auto& m : mins.modules) dims.push_back(m.dim());
    emit(c, set.spec.label() + " on degree-" + std::to_string(power) + " Lie power, dim " +
                std::to_string(action.dim) + " (" + mins.strategy + ")\n" + t.str() + "minimal dims {" + join(dims) +
                "}\nsmallest quotient " + std::to_string(quotient.dim) + "\n" +
                (complete ? "" : "warning: enumeration cap reached, lists may be incomplete\n"));
  }
  return complete ? kOk : kIncomplete;
}

int cmd_construct(const Common& c, const SpecArgs& s) {
  if (c.p < 5) throw UsageError("p must be at least 5");
  const auto set = subgroup(c, s);
  const auto report = construct_group(set.spec, c.d, c.p, pipeline_options(c));
  const std::string doc = report_to_json(report) + "\n";
  const bool ok = report.verification.all_pass();
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw UsageError("cannot write " + c.out);
    f << doc;
  }
  if (c.format == "json") {
    std::cout << doc;
  } else {
    std::cout << "n=" << report.n << " |G|=" << c.p << "^" << report.order_exponent << " class=" << report.n << ' '
              << (ok ? "verified" : "FAILED") << '\n';
    for (const auto& k : report.verification.checks)
      if (!k.pass) std::cout << "failed check " << k.name << ": " << k.witness << '\n';
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_table2(const Common& c, std::size_t d_max, unsigned threads) {
  if (c.p < 5) throw UsageError("p must be at least 5");
  const auto rows = run_table2(c.p, d_max, pipeline_options(c), threads);
  bool bad = false;
  json jrows = json::array();
  Table t({"class", "params", "d", "conditions", "n", "expected", "computed", "relation", "m", "verified"});
  for (const auto& r : rows) {
    const bool row_bad = r.match == Match::Mismatch || !r.verified || !r.error.empty();
    bad = bad || row_bad;
    const std::string expected = to_string(r.expected.relation) + " " + join(r.expected.values, "|");
    json j{{"class", to_string(r.instance.spec.cls)}, {"params", r.instance.spec.params()}, {"d", r.instance.d},
           {"conditions", r.expected.conditions}, {"expected_n", r.expected.n}, {"n", r.n},
           {"expected", r.expected.values}, {"expected_relation", to_string(r.expected.relation)},
           {"computed", r.top_dim}, {"relation", to_string(r.match)}, {"m", r.order_exponent},
           {"verified", r.verified}};
    if (!r.error.empty()) j["error"] = r.error;
    jrows.push_back(j);
    std::string params;
    for (const auto& kv : r.instance.spec.params()) params += (params.empty() ? "" : ",") + kv;
    t.add({to_string(r.instance.spec.cls), params, std::to_string(r.instance.d), r.expected.conditions,
           std::to_string(r.n), expected, std::to_string(r.top_dim), to_string(r.match),
           std::to_string(r.order_exponent), r.verified ? "yes" : "no"});
  }
  if (c.format == "json") {
    emit(c, json{{"p", c.p}, {"d_max", d_max}, {"rows", jrows}, {"pass", !bad}}.dump(2) + "\n");
  } else {
    std::string text = t.str();
    for (const auto& r : rows)
      if (r.match == Match::Mismatch || !r.verified || !r.error.empty())
        text += "mismatch: " + r.instance.spec.label() + " d=" + std::to_string(r.instance.d) +
                (r.error.empty() ? "" : " (" + r.error + ")") + "\n";
    emit(c, text);
  }
  return bad ? kVerificationFailed : kOk;
}

void add_common(CLI::App* cmd, Common& c, bool needs_d) {
  cmd->add_option("--p", c.p, "prime modulus")->required();
  auto* d = cmd->add_option("--d", c.d, "dimension of the natural module");
  if (needs_d) d->required();
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--seed", c.seed, "random seed");
  cmd->add_option("--exhaustive-bound", c.exhaustive_bound, "largest dimension searched by spinning every line");
  cmd->add_option("--out", c.out, "write the output document to this file");
}

void add_spec(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("--class", s.cls, "subgroup class: C1, C2, C3, C4, C7 or C8")->required();
  cmd->add_option("--param", s.params, "key=value parameters, repeatable or comma separated");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponent-p groups from maximal subgroups of GL(d, p)"};
  app.require_subcommand(1);
  Common common;
  SpecArgs spec;
  std::size_t max_n = 4, n = 2, trials = 100, power = 2, d_max = 6;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());

  auto* witt = app.add_subcommand("witt", "dimensions of Lie, exterior and symmetric powers");
  add_common(witt, common, true);
  witt->add_option("--max-n", max_n, "largest degree")->required();

  auto* gamma = app.add_subcommand("gamma", "relatively free exponent-p groups");
  gamma->require_subcommand(1);
  auto* verify = gamma->add_subcommand("verify", "check the group laws");
  add_common(verify, common, true);
  verify->add_option("--n", n, "nilpotency class (2 to 4)")->required();
  verify->add_option("--trials", trials, "random samples per check");

  auto* decompose = app.add_subcommand("decompose", "submodules of a Lie power under a maximal subgroup");
  add_common(decompose, common, true);
  add_spec(decompose, spec);
  decompose->add_option("--power", power, "degree of the Lie power")->required();

  auto* construct = app.add_subcommand("construct", "build and certify a group for one maximal subgroup");
  add_common(construct, common, true);
  add_spec(construct, spec);

  auto* table2 = app.add_subcommand("table2", "reproduce the table of groups for every implemented class");
  add_common(table2, common, false);
  table2->add_option("--d-max", d_max, "largest dimension instantiated");
  table2->add_option("--threads", threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*witt) return cmd_witt(common, max_n);
    if (*verify) return cmd_gamma_verify(common, n, trials);
    if (*decompose) return cmd_decompose(common, spec, power);
    if (*construct) return cmd_construct(common, spec);
    if (*table2) return cmd_table2(common, d_max, threads);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

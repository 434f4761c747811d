#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "maxsym/gamma_group.hpp"
#include "maxsym/maximal_subgroups.hpp"
#include "maxsym/module.hpp"

namespace maxsym {

enum class Relation { Equal, AtMost, OneOf };
enum class Match { Equal, WithinBound, Mismatch };

std::string to_string(Relation r);
std::string to_string(Match m);

/// The published critical class and top-quotient dimension for one subgroup.
struct Expectation {
  std::size_t n = 0;
  std::vector<std::size_t> values;  // one value, or the admissible set for OneOf
  Relation relation = Relation::Equal;
  std::string conditions;           // e.g. "1<r<d"
};

/// Throws std::invalid_argument for parameters outside the table.
Expectation table2_expectation(const SubgroupSpec& spec, std::size_t d);

/// Compares a computed (n, codim M) with the expectation.
Match compare_with_expectation(const Expectation& e, std::size_t n, std::size_t top_dim);

struct PipelineOptions {
  SearchOptions search;
  std::uint64_t seed = 1;
  std::optional<std::filesystem::path> cache_dir;
  /// Random elements raised to the p-th power by the certificate.
  std::size_t exponent_samples = 100;
};

/// Smallest n <= 4 for which the subgroup acts reducibly on the n-th Lie
/// power (from n = 2 for subspace stabilisers). Throws std::logic_error when
/// none exists.
std::size_t find_critical_power(const GeneratorSet& set, const PipelineOptions& opts = {});

struct MChoice {
  Subspace m;
  GlInvariance invariance;
  std::vector<Subspace> candidates;  // all maximal submodules, in selection order
  bool complete = true;
};

/// First maximal submodule, in (codimension, basis) order, that GL does not
/// stabilise. Throws std::logic_error when all are GL-invariant.
MChoice choose_M(const ModuleAction& action, const LieAlgebra& lie, std::size_t n, const SearchOptions& opts = {});

struct CertificateCheck {
  std::string name;
  bool pass = false;
  std::string witness;  // JSON text, empty when there is none
};

struct VerificationRecord {
  std::vector<CertificateCheck> checks;
  bool all_pass() const;
};

struct ConstructionReport {
  GeneratorSet subgroup;
  std::size_t p = 0;
  std::size_t d = 0;
  std::size_t n = 0;
  Subspace m_basis;                  // M inside the n-th Lie power
  std::size_t top_dim = 0;           // codim of M: dimension of the last lower central factor
  std::size_t order_exponent = 0;    // |G| = p^order_exponent
  bool class_verified = false;
  bool exponent_sampled = false;
  bool h_invariance = false;
  std::optional<FpMatrix> sl_witness;
  Expectation expected;
  Match match = Match::Mismatch;
  StructureSummary structure;
  bool search_complete = true;
  VerificationRecord verification;
  std::shared_ptr<const GammaContext> group;  // arithmetic in G
};

ConstructionReport construct_group(const SubgroupSpec& spec, std::size_t d, std::uint32_t p,
                                   const PipelineOptions& opts = {});

/// Checks (a) H stabilises M, (b) some SL generator does not, (c) class n with
/// a commutator witness, (d) exponent p on random elements, (e) the order
/// bound together with the order formula.
VerificationRecord verify_certificate(const ConstructionReport& report, const GammaContext& ctx,
                                      const PipelineOptions& opts = {});

std::string report_to_json(const ConstructionReport& report, int indent = 2);

/// One implemented table row instantiated at the smallest admissible parameters.
struct Table2Instance {
  SubgroupSpec spec;
  std::size_t d = 0;
};
std::vector<Table2Instance> table2_instances(std::size_t d_max);

struct Table2Row {
  Table2Instance instance;
  Expectation expected;
  std::size_t n = 0;
  std::size_t top_dim = 0;
  std::size_t order_exponent = 0;
  Match match = Match::Mismatch;
  bool verified = false;
  bool search_complete = true;
  std::string error;  // non-empty when the construction threw
};

/// Rows in instance order; runs them on up to `threads` workers.
std::vector<Table2Row> run_table2(std::uint32_t p, std::size_t d_max, const PipelineOptions& opts = {},
                                  unsigned threads = 1);

}  // namespace maxsym

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxsym/lie_powers.hpp"
#include "maxsym/matrix.hpp"

namespace maxsym {

/// A group given by nonsingular generator matrices acting on row vectors.
struct ModuleAction {
  std::size_t dim = 0;
  std::uint32_t p = 0;
  std::vector<FpMatrix> gens;

  /// Validates shapes and nonsingularity.
  static ModuleAction make(std::vector<FpMatrix> gens, std::size_t dim, std::uint32_t p);
};

/// Smallest invariant subspace containing the seeds.
Subspace spin(const ModuleAction& action, const std::vector<Vec>& seeds);
bool is_invariant(const ModuleAction& action, const Subspace& space);

/// Action on an invariant subspace, in the coordinates of its echelon basis.
ModuleAction restrict_to(const ModuleAction& action, const Subspace& sub);
/// Action on V / sub, with coset representatives supported on the free columns of sub.
ModuleAction quotient_by(const ModuleAction& action, const Subspace& sub);
/// Preimage in V of a subspace of V / sub.
Subspace lift_from_quotient(const Subspace& sub, const Subspace& in_quotient);
/// Image in the ambient space of a subspace of an invariant subspace (echelon coordinates).
Subspace embed_from_submodule(const Subspace& sub, const Subspace& inside);
/// The contragredient action, generated by transpose inverses.
ModuleAction dual(const ModuleAction& action);

/// A formal linear combination of words in the generators.
struct AlgebraElement {
  struct Term {
    Residue coeff = 0;
    std::vector<std::size_t> word;  // empty word is the identity
  };
  std::vector<Term> terms;

  FpMatrix evaluate(const ModuleAction& action) const;
};

struct IrreducibilityResult {
  bool decided = false;
  bool irreducible = false;
  std::optional<Subspace> witness;  // proper nonzero submodule when reducible
  std::string method;               // "trivial", "exhaustive" or "norton"
};

struct SearchOptions {
  /// Dimensions up to this bound are handled by spinning every line.
  std::size_t exhaustive_bound = 6;
  std::uint64_t seed = 1;
  /// Random algebra elements tried by the irreducibility test.
  std::size_t max_attempts = 500;
  /// Upper limit on lines enumerated inside a homomorphism space.
  std::uint64_t line_cap = 200000;
};

IrreducibilityResult is_irreducible(const ModuleAction& action, const SearchOptions& opts = {});

/// Irreducible constituents with multiplicity, in order along a composition series.
std::vector<ModuleAction> composition_factors(const ModuleAction& action, const SearchOptions& opts = {});

/// Whether two irreducible modules for the same generator list are isomorphic.
bool isomorphic_irreducibles(const ModuleAction& a, const ModuleAction& b, const SearchOptions& opts = {});

/// Module homomorphisms from an irreducible module, as a basis of matrices
/// of size source.dim x target.dim.
struct HomSpace {
  std::size_t dim = 0;
  std::vector<FpMatrix> maps;
};
HomSpace hom_from_irreducible(const ModuleAction& source, const ModuleAction& target, const SearchOptions& opts = {});

struct SubmoduleList {
  std::vector<Subspace> modules;  // sorted by (dimension, echelon basis)
  bool complete = true;           // false when an enumeration cap was hit
  std::string strategy;           // "exhaustive" or "meataxe"
};

/// All minimal submodules: line spinning up to the exhaustive bound, otherwise
/// homomorphisms from the composition factors.
SubmoduleList minimal_submodules(const ModuleAction& action, const SearchOptions& opts = {});
/// Minimal submodules found by spinning every canonical line.
SubmoduleList minimal_submodules_exhaustive(const ModuleAction& action);
/// Maximal submodules as annihilators of the dual's minimal submodules; sorted
/// by (codimension, echelon basis).
SubmoduleList maximal_submodules(const ModuleAction& action, const SearchOptions& opts = {});

struct SmallestQuotient {
  std::size_t dim = 0;
  Subspace realizing;  // a maximal submodule of that codimension
  bool complete = true;
};
/// Throws std::invalid_argument for the zero module.
SmallestQuotient smallest_quotient_dim(const ModuleAction& action, const SearchOptions& opts = {});

struct StructureSummary {
  bool completely_reducible = false;
  bool uniserial = false;
  std::size_t socle_dim = 0;
  std::size_t composition_length = 0;
};
StructureSummary classify_structure(const ModuleAction& action, const SearchOptions& opts = {});

/// The action of GL(d, p)'s standard generators restricted to the degree-n Lie power.
struct GlInvariance {
  bool invariant = true;               // stabilised by both standard pairs
  std::optional<FpMatrix> gl_witness;  // first GL generator moving m
  std::optional<FpMatrix> sl_witness;  // first SL generator moving m
};
GlInvariance gl_invariance_witness(const Subspace& m, const LieAlgebra& lie, std::size_t n);

/// H acting on the degree-n Lie power through induced actions.
ModuleAction lie_power_action(const std::vector<FpMatrix>& gens, const LieAlgebra& lie, std::size_t n);

}  // namespace maxsym

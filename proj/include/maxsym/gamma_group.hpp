#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "maxsym/lie_powers.hpp"

namespace maxsym {

/// (v_1, ..., v_n) with v_i given in coordinates of the degree-i Lie power.
struct GammaElement {
  std::vector<Vec> coords;

  bool operator==(const GammaElement&) const = default;
};

/// The group of Lie n-tuples over F_p^d, optionally modulo a subspace M of the
/// top Lie power. The top coordinate is kept reduced modulo M.
class GammaContext {
 public:
  GammaContext(std::shared_ptr<const LieAlgebra> lie, std::size_t n,
               std::optional<Subspace> quotient = std::nullopt);
  static GammaContext create(std::size_t d, std::uint32_t p, std::size_t n);

  std::uint32_t p() const { return lie_->p(); }
  std::size_t d() const { return lie_->d(); }
  std::size_t n() const { return n_; }
  std::size_t dim(std::size_t k) const { return lie_->dim(k); }
  const LieAlgebra& lie() const { return *lie_; }
  std::shared_ptr<const LieAlgebra> lie_ptr() const { return lie_; }
  const std::optional<Subspace>& quotient() const { return quotient_; }

  /// Same Lie data and n, top coordinate taken modulo m.
  GammaContext quotient_by(const Subspace& m) const;

  GammaElement identity() const;
  /// (e_i, 0, ..., 0).
  GammaElement generator(std::size_t i) const;
  GammaElement random(std::mt19937_64& rng) const;
  /// Validates lengths and ranges; reduces the top coordinate.
  GammaElement make(std::vector<Vec> coords) const;
  /// Throws std::invalid_argument when `a` does not belong to this context.
  void check(const GammaElement& a) const;

 private:
  Vec reduce_top(Vec v) const;

  std::shared_ptr<const LieAlgebra> lie_;
  std::size_t n_;
  std::optional<Subspace> quotient_;
};

GammaElement multiply(const GammaElement& a, const GammaElement& b, const GammaContext& ctx);
GammaElement inverse(const GammaElement& a, const GammaContext& ctx);
/// a^k by square-and-multiply; negative k uses the inverse.
GammaElement power(const GammaElement& a, std::int64_t k, const GammaContext& ctx);
/// Left-normed group commutator [g_1, ..., g_l] with [x, y] = x^-1 y^-1 x y.
GammaElement commutator(const std::vector<GammaElement>& elements, const GammaContext& ctx);

/// Raised when a matrix does not stabilise the quotient subspace.
class NotStabilizingError : public std::runtime_error {
 public:
  NotStabilizingError(Vec witness, const std::string& what) : std::runtime_error(what), witness_(std::move(witness)) {}
  /// Basis vector of M whose image leaves M.
  const Vec& witness() const { return witness_; }

 private:
  Vec witness_;
};

/// The automorphism (v_1, ..., v_n) -> (v_1 g, ..., v_n g).
class Automorphism {
 public:
  Automorphism(const FpMatrix& g, const GammaContext& ctx);
  GammaElement apply(const GammaElement& a) const;
  const FpMatrix& matrix() const { return g_; }
  const FpMatrix& action(std::size_t k) const { return actions_.at(k - 1); }

 private:
  FpMatrix g_;
  const GammaContext* ctx_;
  std::vector<FpMatrix> actions_;
};

GammaElement apply_automorphism(const FpMatrix& g, const GammaElement& a, const GammaContext& ctx);

/// m with |group| = p^m.
std::size_t group_order_exponent(const GammaContext& ctx);

struct ClassWitness {
  std::size_t nilpotency_class = 0;
  std::vector<GammaElement> arguments;  // empty for the trivial group
  GammaElement value;                   // their commutator, not the identity
  bool from_standard_basis = false;
};

/// Largest l such that some l-fold commutator is not the identity. Standard
/// basis tuples are tried first, then `budget` seeded random tuples per length.
ClassWitness nilpotency_class(const GammaContext& ctx, std::uint64_t seed = 1, std::size_t budget = 10000);

/// c with [g_1, ..., g_n] = (0, ..., 0, c [v_1, ..., v_n]) in the class-n group: 2, 12, 24 for n = 2, 3, 4.
std::uint64_t commutator_multiplier(std::size_t n);

struct LawCheck {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;  // JSON list of the offending elements
};

struct GroupLawReport {
  std::vector<LawCheck> checks;
  bool all_pass() const;
};

/// Associativity on `trials` random triples, exponent p on `trials` random
/// elements, and the n-fold commutator closed form on every standard-basis
/// tuple plus `trials` random tuples. Requires a context without quotient.
GroupLawReport verify_group_laws(const GammaContext& ctx, std::size_t trials, std::uint64_t seed);

std::string element_to_json(const GammaElement& a);
GammaElement element_from_json(const std::string& text, const GammaContext& ctx);

}  // namespace maxsym

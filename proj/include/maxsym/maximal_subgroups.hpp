#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "maxsym/ext_field.hpp"
#include "maxsym/matrix.hpp"

namespace maxsym {

enum class SubgroupClass { C1, C2, C3, C4, C7, C8 };
enum class FormKind { Symplectic, OrthogonalPlus, OrthogonalMinus, OrthogonalOdd };

std::string to_string(SubgroupClass c);
std::string to_string(FormKind k);
SubgroupClass parse_subgroup_class(const std::string& tag);
FormKind parse_form_kind(const std::string& name);

/// Parameters of one geometric maximal subgroup of GL(d, p).
///   C1: r = dim U.          C2: r summands of dimension d / r.
///   C3: prime r dividing d.  C4: d = d1 * d2 with 2 <= d1 < d2.
///   C7: d = t^r.            C8: form kind.
struct SubgroupSpec {
  SubgroupClass cls = SubgroupClass::C1;
  std::size_t r = 0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t t = 0;
  std::optional<FormKind> form;

  /// From a class tag and "key=value" items (commas inside an item split it further).
  static SubgroupSpec parse(const std::string& class_tag, const std::vector<std::string>& params);
  /// Throws std::invalid_argument when the parameters do not fit (d, p).
  void validate(std::size_t d, std::uint32_t p) const;
  /// Compact text such as "C2(r=2)" or "C8(form=symplectic)".
  std::string label() const;
  /// Parameters as "key=value" items, suitable for parse().
  std::vector<std::string> params() const;

  bool operator==(const SubgroupSpec&) const = default;
};

struct FormSpec {
  FormKind kind = FormKind::Symplectic;
  FpMatrix gram;
};

/// Gram matrices on antidiagonal patterns; the minus and odd kinds carry the
/// least quadratic non-residue in the centre.
FormSpec standard_form(FormKind kind, std::size_t d, std::uint32_t p);

struct GlSlGenerators {
  std::vector<FpMatrix> gl;
  std::vector<FpMatrix> sl;
};

/// Two-element generating sets for GL(d, p) and SL(d, p) (one element when d = 1).
GlSlGenerators gl_sl_generators(std::size_t d, std::uint32_t p);

/// The geometric structure a subgroup preserves.
struct StabilizedObject {
  SubgroupClass cls = SubgroupClass::C1;
  std::optional<Subspace> subspace;           // C1
  std::size_t block_size = 0;                 // C2
  std::size_t block_count = 0;                // C2
  std::optional<FpMatrix> field_scalar;       // C3: action of the field generator
  std::size_t field_degree = 0;               // C3
  std::vector<std::size_t> tensor_factors;    // C4, C7
  bool factors_permutable = false;            // C7
  std::optional<FormSpec> form;               // C8
};

struct GeneratorSet {
  SubgroupSpec spec;
  std::size_t d = 0;
  std::uint32_t p = 0;
  std::vector<FpMatrix> gens;
  StabilizedObject object;
  std::vector<Residue> similitude_characters;  // C8 only, one per generator
};

GeneratorSet build_generators(const SubgroupSpec& spec, std::size_t d, std::uint32_t p);

/// Whether g preserves the object in the sense of its class.
bool stabilizes(const FpMatrix& g, const StabilizedObject& object);

/// delta with g * gram * g^T = delta * gram, if any.
std::optional<Residue> similitude_character(const FpMatrix& g, const FpMatrix& gram);

/// Whether m is a Kronecker product of square factors of the given sizes.
bool is_kronecker_product(const FpMatrix& m, const std::vector<std::size_t>& factors);

/// Permutation matrix sending e_{i_1} (x) ... (x) e_{i_r} to the tensor whose
/// slot sigma[k] holds i_k.
FpMatrix slot_permutation_matrix(const std::vector<std::size_t>& sigma, std::size_t t, std::uint32_t p);

/// The permutation induced on blocks (C2) or tensor slots (C7); nullopt when
/// the generator is not block/slot monomial.
std::optional<std::vector<std::size_t>> induced_permutation(const FpMatrix& g, const StabilizedObject& object);

std::string generator_set_to_json(const GeneratorSet& set);

}  // namespace maxsym

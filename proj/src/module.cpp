#include "maxsym/module.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "maxsym/maximal_subgroups.hpp"
#include "maxsym/polynomial.hpp"
#include "maxsym/prime_field.hpp"

namespace maxsym {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool is_zero_vec(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

/// Calls visit(v) for every vector whose first nonzero entry is 1; stops when
/// visit returns false. Returns false if stopped early.
template <class Visit>
bool for_each_line(std::size_t n, std::uint32_t p, Visit&& visit) {
  Vec v(n, 0);
  for (std::size_t lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    for (;;) {
      if (!visit(static_cast<const Vec&>(v))) return false;
      std::size_t pos = n;
      while (pos > lead + 1) {
        if (++v[pos - 1] < p) break;
        v[pos - 1] = 0;
        --pos;
      }
      if (pos == lead + 1) break;
    }
  }
  return true;
}

std::uint64_t line_count(std::size_t n, std::uint32_t p, std::uint64_t cap) {
  std::uint64_t total = 0, power = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total += power;
    if (total > cap) return cap + 1;
    power *= p;
    if (power > cap) power = cap + 1;
  }
  return total;
}

/// Spin of one seed recording, for each basis vector, the (parent, generator) edge that produced it.
struct WordSpin {
  std::vector<Vec> basis;
  std::vector<std::pair<std::size_t, std::size_t>> edge;  // (parent index, generator), root has kNone
  Subspace span;
};

WordSpin spin_with_words(const ModuleAction& action, const Vec& seed) {
  WordSpin s{{}, {}, Subspace(action.dim, action.p)};
  if (!s.span.insert(seed)) return s;
  s.basis.push_back(seed);
  s.edge.emplace_back(kNone, kNone);
  for (std::size_t i = 0; i < s.basis.size() && !s.span.is_full(); ++i)
    for (std::size_t g = 0; g < action.gens.size(); ++g) {
      Vec w = vec_mat(s.basis[i], action.gens[g]);
      if (s.span.insert(w)) {
        s.basis.push_back(std::move(w));
        s.edge.emplace_back(i, g);
        if (s.span.is_full()) break;
      }
    }
  return s;
}

AlgebraElement random_element(std::size_t ngens, std::uint32_t p, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> coeff(1, p - 1);
  AlgebraElement a;
  if (ngens == 0) {
    a.terms.push_back({coeff(rng), {}});
    return a;
  }
  std::uniform_int_distribution<std::size_t> gen(0, ngens - 1);
  std::uniform_int_distribution<std::size_t> len(1, 3);
  std::uniform_int_distribution<std::size_t> nterms(2, 4);
  const std::size_t k = nterms(rng);
  for (std::size_t t = 0; t < k; ++t) {
    AlgebraElement::Term term{coeff(rng), {}};
    const std::size_t l = len(rng);
    for (std::size_t i = 0; i < l; ++i) term.word.push_back(gen(rng));
    a.terms.push_back(std::move(term));
  }
  if (rng() % 2 == 0) a.terms.push_back({coeff(rng), {}});
  return a;
}

ModuleAction transposed(const ModuleAction& action) {
  ModuleAction t{action.dim, action.p, {}};
  for (const auto& g : action.gens) t.gens.push_back(transpose(g));
  return t;
}

/// Irreducible factors of the characteristic polynomial worth trying, smallest degree first.
std::vector<Poly> candidate_factors(const FpMatrix& a, std::uint64_t seed) {
  const PrimeField F(a.modulus());
  std::vector<Poly> out;
  for (const auto& [f, mult] : poly::factor(poly::charpoly(a), F, seed)) out.push_back(f);
  std::stable_sort(out.begin(), out.end(), [](const Poly& x, const Poly& y) { return x.size() < y.size(); });
  return out;
}

constexpr std::size_t kFactorsPerElement = 3;

/// One round of Norton's test with a given algebra element.
IrreducibilityResult norton_round(const ModuleAction& action, const ModuleAction& trans, const FpMatrix& a,
                                  std::mt19937_64& rng) {
  const std::size_t n = action.dim;
  const auto factors = candidate_factors(a, rng());
  for (std::size_t fi = 0; fi < factors.size() && fi < kFactorsPerElement; ++fi) {
    const Poly& f = factors[fi];
    const std::size_t deg = f.size() - 1;
    const FpMatrix fa = poly::evaluate(f, a);
    const FpMatrix null = nullspace(fa);
    if (null.rows() == 0) continue;
    Vec v(n, 0);
    std::uniform_int_distribution<Residue> coeff(0, action.p - 1);
    while (is_zero_vec(v)) {
      for (std::size_t r = 0; r < null.rows(); ++r) {
        const Residue c = coeff(rng);
        for (std::size_t j = 0; j < n; ++j) v[j] = (v[j] + c * null(r, j)) % action.p;
      }
    }
    Subspace s = spin(action, {v});
    if (s.dim() < n) return {true, false, std::move(s), "norton"};
    if (null.rows() != deg) continue;
    const FpMatrix tnull = nullspace(transpose(fa));
    Subspace w = spin(trans, {Vec(tnull.row(0).begin(), tnull.row(0).end())});
    if (w.dim() < n) return {true, false, w.annihilator(), "norton"};
    return {true, true, std::nullopt, "norton"};
  }
  return {};
}

IrreducibilityResult exhaustive_irreducibility(const ModuleAction& action) {
  IrreducibilityResult res{true, true, std::nullopt, "exhaustive"};
  for_each_line(action.dim, action.p, [&](const Vec& v) {
    Subspace s = spin(action, {v});
    if (s.dim() < action.dim) {
      res.irreducible = false;
      res.witness = std::move(s);
      return false;
    }
    return true;
  });
  return res;
}

bool by_dim_then_basis(const Subspace& a, const Subspace& b) { return a < b; }

bool by_codim_then_basis(const Subspace& a, const Subspace& b) {
  if (a.codim() != b.codim()) return a.codim() < b.codim();
  return a.rows() < b.rows();
}

}  // namespace

ModuleAction ModuleAction::make(std::vector<FpMatrix> gens, std::size_t dim, std::uint32_t p) {
  for (const auto& g : gens) {
    if (g.rows() != dim || g.cols() != dim || g.modulus() != p)
      throw std::invalid_argument("ModuleAction: generator of wrong shape or modulus");
    if (dim > 0 && determinant(g) == 0) throw SingularMatrixError(dim, rank(g));
  }
  return ModuleAction{dim, p, std::move(gens)};
}

Subspace spin(const ModuleAction& action, const std::vector<Vec>& seeds) {
  Subspace s(action.dim, action.p);
  std::vector<Vec> frontier;
  for (const auto& v : seeds) {
    if (v.size() != action.dim) throw std::invalid_argument("spin: seed has wrong length");
    if (s.insert(v)) frontier.push_back(v);
  }
  for (std::size_t i = 0; i < frontier.size() && !s.is_full(); ++i)
    for (const auto& g : action.gens) {
      Vec w = vec_mat(frontier[i], g);
      if (s.insert(w)) frontier.push_back(std::move(w));
    }
  return s;
}

bool is_invariant(const ModuleAction& action, const Subspace& space) {
  for (const auto& row : space.rows())
    for (const auto& g : action.gens)
      if (!space.contains(vec_mat(row, g))) return false;
  return true;
}

ModuleAction restrict_to(const ModuleAction& action, const Subspace& sub) {
  ModuleAction out{sub.dim(), action.p, {}};
  for (const auto& g : action.gens) {
    FpMatrix m(sub.dim(), sub.dim(), action.p);
    for (std::size_t i = 0; i < sub.dim(); ++i) {
      const auto c = sub.coordinates(vec_mat(sub.rows()[i], g));
      if (!c) throw NotInvariantError(i, "restrict_to: subspace is not invariant");
      for (std::size_t j = 0; j < c->size(); ++j) m(i, j) = (*c)[j];
    }
    out.gens.push_back(std::move(m));
  }
  return out;
}

ModuleAction quotient_by(const ModuleAction& action, const Subspace& sub) {
  const auto free = sub.free_columns();
  ModuleAction out{free.size(), action.p, {}};
  for (const auto& g : action.gens) {
    FpMatrix m(free.size(), free.size(), action.p);
    for (std::size_t i = 0; i < free.size(); ++i) {
      const Vec img = sub.reduce(g.row(free[i]));
      for (std::size_t j = 0; j < free.size(); ++j) m(i, j) = img[free[j]];
    }
    out.gens.push_back(std::move(m));
  }
  return out;
}

Subspace lift_from_quotient(const Subspace& sub, const Subspace& in_quotient) {
  const auto free = sub.free_columns();
  Subspace out = sub;
  for (const auto& row : in_quotient.rows()) {
    Vec v(sub.ambient_dim(), 0);
    for (std::size_t j = 0; j < free.size(); ++j) v[free[j]] = row[j];
    out.insert(v);
  }
  return out;
}

Subspace embed_from_submodule(const Subspace& sub, const Subspace& inside) {
  Subspace out(sub.ambient_dim(), sub.modulus());
  for (const auto& row : inside.rows()) out.insert(vec_mat(row, sub.basis()));
  return out;
}

ModuleAction dual(const ModuleAction& action) {
  ModuleAction out{action.dim, action.p, {}};
  for (const auto& g : action.gens) out.gens.push_back(transpose_inverse(g));
  return out;
}

FpMatrix AlgebraElement::evaluate(const ModuleAction& action) const {
  FpMatrix acc(action.dim, action.dim, action.p);
  for (const auto& t : terms) {
    FpMatrix w = FpMatrix::identity(action.dim, action.p);
    for (auto g : t.word) w = w * action.gens.at(g);
    acc = acc + scaled(w, t.coeff);
  }
  return acc;
}

IrreducibilityResult is_irreducible(const ModuleAction& action, const SearchOptions& opts) {
  if (action.dim == 0) return {true, false, std::nullopt, "trivial"};
  if (action.dim == 1) return {true, true, std::nullopt, "trivial"};
  if (action.dim <= opts.exhaustive_bound) return exhaustive_irreducibility(action);
  std::mt19937_64 rng(opts.seed);
  const ModuleAction trans = transposed(action);
  for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const FpMatrix a = random_element(action.gens.size(), action.p, rng).evaluate(action);
    auto res = norton_round(action, trans, a, rng);
    if (res.decided) return res;
  }
  if (line_count(action.dim, action.p, opts.line_cap) <= opts.line_cap) return exhaustive_irreducibility(action);
  return {};
}

std::vector<ModuleAction> composition_factors(const ModuleAction& action, const SearchOptions& opts) {
  if (action.dim == 0) return {};
  const auto res = is_irreducible(action, opts);
  if (!res.decided) throw std::runtime_error("composition_factors: irreducibility test undecided");
  if (res.irreducible) return {action};
  auto lower = composition_factors(restrict_to(action, *res.witness), opts);
  auto upper = composition_factors(quotient_by(action, *res.witness), opts);
  lower.insert(lower.end(), std::make_move_iterator(upper.begin()), std::make_move_iterator(upper.end()));
  return lower;
}

HomSpace hom_from_irreducible(const ModuleAction& source, const ModuleAction& target, const SearchOptions& opts) {
  if (source.gens.size() != target.gens.size()) throw std::invalid_argument("hom_from_irreducible: generator lists differ");
  HomSpace out;
  if (source.dim == 0 || target.dim == 0) return out;
  const std::uint32_t p = source.p;
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
  // an element with a factor f whose null space in the source has dimension deg f
  std::optional<AlgebraElement> elt;
  Poly f;
  FpMatrix source_null;
  for (std::size_t attempt = 0; attempt < opts.max_attempts && !elt; ++attempt) {
    AlgebraElement a = random_element(source.gens.size(), p, rng);
    const FpMatrix as = a.evaluate(source);
    const auto factors = candidate_factors(as, rng());
    for (std::size_t fi = 0; fi < factors.size() && fi < kFactorsPerElement; ++fi) {
      const FpMatrix null = nullspace(poly::evaluate(factors[fi], as));
      if (null.rows() == factors[fi].size() - 1) {
        elt = std::move(a);
        f = factors[fi];
        source_null = null;
        break;
      }
    }
  }
  if (!elt) throw std::runtime_error("hom_from_irreducible: no suitable algebra element found");
  const Vec seed(source_null.row(0).begin(), source_null.row(0).end());
  const WordSpin ws = spin_with_words(source, seed);
  if (ws.basis.size() != source.dim) throw std::invalid_argument("hom_from_irreducible: source is not irreducible");
  const FpMatrix basis_inv = invert(FpMatrix::from_vectors(ws.basis, source.dim, p));

  const FpMatrix target_null = nullspace(poly::evaluate(f, elt->evaluate(target)));
  const std::size_t m = target_null.rows();
  if (m == 0) return out;
  // images[k]: candidate images of the k-th spin vector, one row per null-space parameter
  std::vector<FpMatrix> images{target_null};
  std::vector<std::vector<bool>> tree(source.dim, std::vector<bool>(source.gens.size(), false));
  for (std::size_t k = 1; k < ws.basis.size(); ++k) {
    const auto [parent, g] = ws.edge[k];
    images.push_back(images[parent] * target.gens[g]);
    tree[parent][g] = true;
  }
  FpMatrix sol = FpMatrix::identity(m, p);
  for (std::size_t k = 0; k < ws.basis.size() && sol.rows() > 0; ++k)
    for (std::size_t g = 0; g < source.gens.size() && sol.rows() > 0; ++g) {
      if (tree[k][g]) continue;
      const Vec coords = vec_mat(vec_mat(ws.basis[k], source.gens[g]), basis_inv);
      FpMatrix cond = sol * images[k] * target.gens[g];
      for (std::size_t l = 0; l < coords.size(); ++l)
        if (coords[l] != 0) cond = cond - scaled(sol * images[l], coords[l]);
      if (cond.is_zero()) continue;
      sol = nullspace(cond) * sol;
    }
  out.dim = sol.rows();
  for (std::size_t h = 0; h < sol.rows(); ++h) {
    FpMatrix on_spin(source.dim, target.dim, p);
    const Vec x(sol.row(h).begin(), sol.row(h).end());
    for (std::size_t k = 0; k < source.dim; ++k) {
      const Vec img = vec_mat(x, images[k]);
      for (std::size_t j = 0; j < target.dim; ++j) on_spin(k, j) = img[j];
    }
    out.maps.push_back(basis_inv * on_spin);
  }
  return out;
}

bool isomorphic_irreducibles(const ModuleAction& a, const ModuleAction& b, const SearchOptions& opts) {
  if (a.dim != b.dim) return false;
  return hom_from_irreducible(a, b, opts).dim > 0;
}

SubmoduleList minimal_submodules_exhaustive(const ModuleAction& action) {
  SubmoduleList out;
  out.strategy = "exhaustive";
  std::set<Subspace> spans;
  for_each_line(action.dim, action.p, [&](const Vec& v) {
    spans.insert(spin(action, {v}));
    return true;
  });
  // std::set orders by dimension first, so minimal candidates are seen before their supersets
  for (const auto& s : spans) {
    bool minimal = true;
    for (const auto& t : out.modules)
      if (s.contains(t)) {
        minimal = false;
        break;
      }
    if (minimal) out.modules.push_back(s);
  }
  std::sort(out.modules.begin(), out.modules.end(), by_dim_then_basis);
  return out;
}

SubmoduleList minimal_submodules(const ModuleAction& action, const SearchOptions& opts) {
  if (action.dim == 0) return {{}, true, "exhaustive"};
  if (action.dim <= opts.exhaustive_bound) return minimal_submodules_exhaustive(action);
  SubmoduleList out;
  out.strategy = "meataxe";
  std::vector<ModuleAction> types;
  for (auto& c : composition_factors(action, opts)) {
    bool seen = false;
    for (const auto& t : types)
      if (isomorphic_irreducibles(t, c, opts)) {
        seen = true;
        break;
      }
    if (!seen) types.push_back(std::move(c));
  }
  std::set<Subspace> found;
  for (const auto& type : types) {
    const HomSpace hom = hom_from_irreducible(type, action, opts);
    if (hom.dim == 0) continue;
    std::uint64_t visited = 0;
    const bool finished = for_each_line(hom.dim, action.p, [&](const Vec& x) {
      if (++visited > opts.line_cap) return false;
      FpMatrix phi(type.dim, action.dim, action.p);
      for (std::size_t h = 0; h < hom.dim; ++h)
        if (x[h] != 0) phi = phi + scaled(hom.maps[h], x[h]);
      found.insert(Subspace::span(phi));
      return true;
    });
    if (!finished) out.complete = false;
  }
  out.modules.assign(found.begin(), found.end());
  std::sort(out.modules.begin(), out.modules.end(), by_dim_then_basis);
  return out;
}

SubmoduleList maximal_submodules(const ModuleAction& action, const SearchOptions& opts) {
  SubmoduleList mins = minimal_submodules(dual(action), opts);
  SubmoduleList out{{}, mins.complete, mins.strategy};
  for (const auto& w : mins.modules) out.modules.push_back(w.annihilator());
  std::sort(out.modules.begin(), out.modules.end(), by_codim_then_basis);
  return out;
}

SmallestQuotient smallest_quotient_dim(const ModuleAction& action, const SearchOptions& opts) {
  if (action.dim == 0) throw std::invalid_argument("smallest_quotient_dim: zero module");
  const auto maxs = maximal_submodules(action, opts);
  if (maxs.modules.empty()) throw std::logic_error("smallest_quotient_dim: no maximal submodule found");
  return {maxs.modules.front().codim(), maxs.modules.front(), maxs.complete};
}

namespace {

bool uniserial(const ModuleAction& action, const SearchOptions& opts) {
  if (action.dim <= 1) return true;
  const auto mins = minimal_submodules(action, opts);
  if (mins.modules.size() != 1) return false;
  return uniserial(quotient_by(action, mins.modules.front()), opts);
}

}  // namespace

StructureSummary classify_structure(const ModuleAction& action, const SearchOptions& opts) {
  StructureSummary s;
  const auto mins = minimal_submodules(action, opts);
  Subspace socle(action.dim, action.p);
  for (const auto& m : mins.modules) socle = socle.sum(m);
  s.socle_dim = socle.dim();
  s.completely_reducible = socle.is_full();
  s.uniserial = uniserial(action, opts);
  s.composition_length = composition_factors(action, opts).size();
  return s;
}

GlInvariance gl_invariance_witness(const Subspace& m, const LieAlgebra& lie, std::size_t n) {
  GlInvariance out;
  const auto gens = gl_sl_generators(lie.d(), lie.p());
  auto moves = [&](const FpMatrix& g) {
    const FpMatrix a = lie.induced_action(g, n);
    for (const auto& row : m.rows())
      if (!m.contains(vec_mat(row, a))) return true;
    return false;
  };
  for (const auto& g : gens.gl)
    if (moves(g)) {
      out.gl_witness = g;
      break;
    }
  for (const auto& g : gens.sl)
    if (moves(g)) {
      out.sl_witness = g;
      break;
    }
  out.invariant = !out.gl_witness;
  return out;
}

ModuleAction lie_power_action(const std::vector<FpMatrix>& gens, const LieAlgebra& lie, std::size_t n) {
  std::vector<FpMatrix> induced;
  for (const auto& g : gens) induced.push_back(lie.induced_action(g, n));
  return ModuleAction::make(std::move(induced), lie.dim(n), lie.p());
}

}  // namespace maxsym

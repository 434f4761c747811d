#include "maxsym/maximal_subgroups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "maxsym/prime_field.hpp"

namespace maxsym {

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("parameter " + key + " must be a non-negative integer, got '" + value + "'");
  return static_cast<std::size_t>(std::stoull(value));
}

FpMatrix block_diagonal(const std::vector<FpMatrix>& blocks, std::uint32_t p) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  FpMatrix out(n, n, p);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(off + i, off + j) = b(i, j);
    off += b.rows();
  }
  return out;
}

/// Places `inner` in the top-left corner of the identity of size n.
FpMatrix embed_top_left(const FpMatrix& inner, std::size_t n) {
  FpMatrix out = FpMatrix::identity(n, inner.modulus());
  for (std::size_t i = 0; i < inner.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) out(i, j) = inner(i, j);
  return out;
}

FpMatrix embed_at(const FpMatrix& inner, std::size_t offset, std::size_t n) {
  FpMatrix out = FpMatrix::identity(n, inner.modulus());
  for (std::size_t i = 0; i < inner.rows(); ++i)
    for (std::size_t j = 0; j < inner.cols(); ++j) out(offset + i, offset + j) = inner(i, j);
  return out;
}

/// Block permutation matrix: block i is sent to block perm[i].
FpMatrix block_permutation(const std::vector<std::size_t>& perm, std::size_t block, std::uint32_t p) {
  const std::size_t n = perm.size() * block;
  FpMatrix out(n, n, p);
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t k = 0; k < block; ++k) out(i * block + k, perm[i] * block + k) = 1;
  return out;
}

std::vector<std::size_t> cycle_perm(std::size_t r) {
  std::vector<std::size_t> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = (i + 1) % r;
  return c;
}

std::vector<std::size_t> swap_perm(std::size_t r) {
  std::vector<std::size_t> s(r);
  std::iota(s.begin(), s.end(), 0);
  std::swap(s[0], s[1]);
  return s;
}

void push_unique(std::vector<FpMatrix>& gens, FpMatrix g) {
  if (g.is_identity()) return;
  if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(std::move(g));
}

Residue bilinear(const Vec& x, const FpMatrix& gram, const Vec& y) {
  const Vec xg = vec_mat(x, gram);
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += std::uint64_t{xg[i]} * y[i];
  return static_cast<Residue>(s % gram.modulus());
}

/// I + c * (gram v^T) v, i.e. x -> x + c * beta(x, v) v.
FpMatrix rank_one_update(const Vec& v, const FpMatrix& gram, Residue c) {
  const std::uint32_t p = gram.modulus();
  const std::size_t d = v.size();
  FpMatrix col(d, 1, p);
  const Vec gv = vec_mat(v, transpose(gram));
  for (std::size_t i = 0; i < d; ++i) col(i, 0) = gv[i];
  FpMatrix row(1, d, p);
  for (std::size_t i = 0; i < d; ++i) row(0, i) = v[i];
  return FpMatrix::identity(d, p) + scaled(col * row, c);
}

/// Vectors with entries in `values`, ordered by weight then lexicographically.
std::vector<Vec> weight_ordered_vectors(std::size_t d, const std::vector<Residue>& values, std::size_t max_weight) {
  std::vector<Vec> out;
  for (std::size_t w = 1; w <= std::min(max_weight, d); ++w) {
    std::vector<bool> mask(d, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(w), true);
    do {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < d; ++i)
        if (mask[i]) support.push_back(i);
      // first support entry fixed to 1, the rest range over `values`
      std::vector<std::size_t> choice(w, 0);
      for (;;) {
        Vec v(d, 0);
        v[support[0]] = 1;
        for (std::size_t k = 1; k < w; ++k) v[support[k]] = values[choice[k]];
        out.push_back(std::move(v));
        std::size_t pos = w;
        while (pos > 1 && ++choice[pos - 1] == values.size()) choice[--pos] = 0;
        if (pos <= 1) break;
      }
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return out;
}

constexpr std::uint64_t kFormSeed = 0x6d61787379ULL;

std::vector<FpMatrix> isometry_generators(const FormSpec& form, std::size_t d, std::uint32_t p) {
  const PrimeField F(p);
  const Residue nu = F.least_nonresidue();
  std::vector<FpMatrix> gens;
  std::mt19937_64 rng(kFormSeed + d * 31 + p);
  std::uniform_int_distribution<Residue> dist(0, p - 1);
  const auto candidates = weight_ordered_vectors(d, {1, nu}, 3);
  if (form.kind == FormKind::Symplectic) {
    std::size_t taken = 0;
    for (const auto& v : candidates) {
      if (taken == d + 2) break;
      push_unique(gens, rank_one_update(v, form.gram, 1));
      ++taken;
    }
    for (int k = 0; k < 4;) {
      Vec v(d);
      for (auto& x : v) x = dist(rng);
      if (std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; })) continue;
      push_unique(gens, rank_one_update(v, form.gram, 1));
      ++k;
    }
    return gens;
  }
  auto reflection = [&](const Vec& v) {
    const Residue q = bilinear(v, form.gram, v);
    return rank_one_update(v, form.gram, F.neg(F.mul(2, F.inv(q))));
  };
  std::size_t taken = 0;
  bool square_norm = false, nonsquare_norm = false;
  for (const auto& v : candidates) {
    const Residue q = bilinear(v, form.gram, v);
    if (q == 0) continue;
    const bool sq = F.is_square(q);
    if (taken >= d + 2 && (sq ? square_norm : nonsquare_norm)) continue;
    push_unique(gens, reflection(v));
    ++taken;
    (sq ? square_norm : nonsquare_norm) = true;
    if (taken >= d + 2 && square_norm && nonsquare_norm) break;
  }
  for (int k = 0; k < 4;) {
    Vec v(d);
    for (auto& x : v) x = dist(rng);
    if (bilinear(v, form.gram, v) == 0) continue;
    push_unique(gens, reflection(v));
    ++k;
  }
  return gens;
}

/// A similitude with multiplier the primitive root; scalars for odd dimension.
FpMatrix proper_similitude(const FormSpec& form, std::size_t d, std::uint32_t p) {
  const PrimeField F(p);
  const Residue w = F.primitive_root();
  if (form.kind == FormKind::OrthogonalOdd) return FpMatrix::scalar(d, w, p);
  const std::size_t m = d / 2;
  FpMatrix g = FpMatrix::identity(d, p);
  if (form.kind == FormKind::OrthogonalMinus) {
    for (std::size_t i = 0; i + 1 < m; ++i) g(i, i) = w;
    // centre plane carries x^2 - nu y^2; use an element of norm w
    const Residue nu = F.least_nonresidue();
    for (Residue x = 0; x < p; ++x)
      for (Residue y = 0; y < p; ++y)
        if (F.sub(F.mul(x, x), F.mul(nu, F.mul(y, y))) == w) {
          g(m - 1, m - 1) = x;
          g(m - 1, m) = y;
          g(m, m - 1) = F.mul(nu, y);
          g(m, m) = x;
          return g;
        }
    throw std::logic_error("no element of the required norm");
  }
  for (std::size_t i = 0; i < m; ++i) g(i, i) = w;
  return g;
}

/// GL(k, p^r) generators written over F_p through the field's regular representation.
std::vector<FpMatrix> extension_gl_generators(const ExtFieldData& E, std::size_t k) {
  const std::uint32_t p = E.p;
  const std::size_t r = E.r;
  const FpMatrix one = FpMatrix::identity(r, p);
  const FpMatrix minus_one = scaled(one, p - 1);
  const FpMatrix xi = E.mult_matrix(E.primitive_elt);
  auto assemble = [&](const std::vector<std::vector<const FpMatrix*>>& blocks) {
    FpMatrix out(k * r, k * r, p);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (const FpMatrix* b = blocks[i][j])
          for (std::size_t a = 0; a < r; ++a)
            for (std::size_t c = 0; c < r; ++c) out(i * r + a, j * r + c) = (*b)(a, c);
    return out;
  };
  std::vector<std::vector<const FpMatrix*>> diag(k, std::vector<const FpMatrix*>(k, nullptr));
  for (std::size_t i = 0; i < k; ++i) diag[i][i] = i == 0 ? &xi : &one;
  std::vector<FpMatrix> gens{assemble(diag)};
  if (k >= 2) {
    std::vector<std::vector<const FpMatrix*>> cyc(k, std::vector<const FpMatrix*>(k, nullptr));
    cyc[0][0] = &minus_one;
    cyc[0][k - 1] = &one;
    for (std::size_t i = 1; i < k; ++i) cyc[i][i - 1] = &minus_one;
    gens.push_back(assemble(cyc));
  }
  return gens;
}

/// Reshape an (a*b) x (a*b) matrix into a^2 x b^2 with entry ((i1,j1),(i2,j2)).
FpMatrix kronecker_rearrange(const FpMatrix& m, std::size_t a, std::size_t b) {
  FpMatrix r(a * a, b * b, m.modulus());
  for (std::size_t i1 = 0; i1 < a; ++i1)
    for (std::size_t j1 = 0; j1 < a; ++j1)
      for (std::size_t i2 = 0; i2 < b; ++i2)
        for (std::size_t j2 = 0; j2 < b; ++j2) r(i1 * a + j1, i2 * b + j2) = m(i1 * b + i2, j1 * b + j2);
  return r;
}

std::vector<std::vector<std::size_t>> all_permutations(std::size_t r) {
  std::vector<std::size_t> s(r);
  std::iota(s.begin(), s.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

}  // namespace

std::string to_string(SubgroupClass c) {
  switch (c) {
    case SubgroupClass::C1: return "C1";
    case SubgroupClass::C2: return "C2";
    case SubgroupClass::C3: return "C3";
    case SubgroupClass::C4: return "C4";
    case SubgroupClass::C7: return "C7";
    case SubgroupClass::C8: return "C8";
  }
  return "?";
}

std::string to_string(FormKind k) {
  switch (k) {
    case FormKind::Symplectic: return "symplectic";
    case FormKind::OrthogonalPlus: return "orthogonal-plus";
    case FormKind::OrthogonalMinus: return "orthogonal-minus";
    case FormKind::OrthogonalOdd: return "orthogonal-odd";
  }
  return "?";
}

SubgroupClass parse_subgroup_class(const std::string& tag) {
  for (auto c : {SubgroupClass::C1, SubgroupClass::C2, SubgroupClass::C3, SubgroupClass::C4, SubgroupClass::C7,
                 SubgroupClass::C8})
    if (tag == to_string(c)) return c;
  throw std::invalid_argument("unknown or unsupported class '" + tag + "' (expected C1, C2, C3, C4, C7 or C8)");
}

FormKind parse_form_kind(const std::string& name) {
  for (auto k : {FormKind::Symplectic, FormKind::OrthogonalPlus, FormKind::OrthogonalMinus, FormKind::OrthogonalOdd})
    if (name == to_string(k)) return k;
  throw std::invalid_argument("unknown form '" + name +
                              "' (expected symplectic, orthogonal-plus, orthogonal-minus or orthogonal-odd)");
}

SubgroupSpec SubgroupSpec::parse(const std::string& class_tag, const std::vector<std::string>& params) {
  SubgroupSpec spec;
  spec.cls = parse_subgroup_class(class_tag);
  std::vector<std::string> allowed;
  switch (spec.cls) {
    case SubgroupClass::C1:
    case SubgroupClass::C2:
    case SubgroupClass::C3: allowed = {"r"}; break;
    case SubgroupClass::C4: allowed = {"d1", "d2"}; break;
    case SubgroupClass::C7: allowed = {"t", "r"}; break;
    case SubgroupClass::C8: allowed = {"form"}; break;
  }
  std::vector<std::string> seen;
  for (const auto& raw : params) {
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("parameter '" + item + "' is not of the form key=value");
      const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
        throw std::invalid_argument("unknown parameter '" + key + "' for class " + class_tag);
      if (std::find(seen.begin(), seen.end(), key) != seen.end())
        throw std::invalid_argument("parameter '" + key + "' given twice");
      seen.push_back(key);
      if (key == "r") spec.r = parse_size(key, value);
      else if (key == "d1") spec.d1 = parse_size(key, value);
      else if (key == "d2") spec.d2 = parse_size(key, value);
      else if (key == "t") spec.t = parse_size(key, value);
      else spec.form = parse_form_kind(value);
    }
  }
  for (const auto& key : allowed)
    if (std::find(seen.begin(), seen.end(), key) == seen.end())
      throw std::invalid_argument("missing parameter '" + key + "' for class " + class_tag);
  return spec;
}

void SubgroupSpec::validate(std::size_t d, std::uint32_t p) const {
  auto fail = [&](const std::string& why) { throw std::invalid_argument(label() + " with d=" + std::to_string(d) + ": " + why); };
  if (!is_prime(p) || p < 3) fail("p must be an odd prime");
  if (d < 2) fail("d must be at least 2");
  switch (cls) {
    case SubgroupClass::C1:
      if (r < 1 || r >= d) fail("need 0 < r < d");
      break;
    case SubgroupClass::C2:
      if (r < 2 || r > d || d % r != 0) fail("need r >= 2 dividing d");
      break;
    case SubgroupClass::C3:
      if (!is_prime(r) || d % r != 0) fail("need a prime r dividing d");
      if (ipow(p, r) > 1'000'000) fail("p^r exceeds 10^6");
      break;
    case SubgroupClass::C4:
      if (d1 < 2 || d1 >= d2 || d1 * d2 != d) fail("need d = d1 * d2 with 2 <= d1 < d2");
      break;
    case SubgroupClass::C7:
      if (t < 2 || r < 2 || ipow(t, r) != d) fail("need d = t^r with t, r >= 2");
      break;
    case SubgroupClass::C8:
      if (!form) fail("missing form");
      if (d == 2) fail("forms on a plane are excluded");
      if ((*form == FormKind::OrthogonalOdd) != (d % 2 == 1))
        fail(*form == FormKind::OrthogonalOdd ? "odd orthogonal form needs odd d" : "this form needs even d");
      break;
  }
}

std::vector<std::string> SubgroupSpec::params() const {
  switch (cls) {
    case SubgroupClass::C1:
    case SubgroupClass::C2:
    case SubgroupClass::C3: return {"r=" + std::to_string(r)};
    case SubgroupClass::C4: return {"d1=" + std::to_string(d1), "d2=" + std::to_string(d2)};
    case SubgroupClass::C7: return {"t=" + std::to_string(t), "r=" + std::to_string(r)};
    case SubgroupClass::C8: return {"form=" + (form ? to_string(*form) : std::string("?"))};
  }
  return {};
}

std::string SubgroupSpec::label() const {
  std::string out = to_string(cls) + "(";
  const auto ps = params();
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + ps[i];
  return out + ")";
}

FormSpec standard_form(FormKind kind, std::size_t d, std::uint32_t p) {
  if (d < 1) throw std::invalid_argument("standard_form: d must be positive");
  const bool odd = d % 2 == 1;
  if ((kind == FormKind::OrthogonalOdd) != odd)
    throw std::invalid_argument("standard_form: " + to_string(kind) + " is incompatible with d=" + std::to_string(d));
  const PrimeField F(p);
  FormSpec form{kind, FpMatrix(d, d, p)};
  for (std::size_t i = 0; i < d; ++i) form.gram(i, d - 1 - i) = 1;
  const std::size_t m = d / 2;
  switch (kind) {
    case FormKind::Symplectic:
      for (std::size_t i = m; i < d; ++i) form.gram(i, d - 1 - i) = p - 1;
      break;
    case FormKind::OrthogonalPlus: break;
    case FormKind::OrthogonalMinus:
      form.gram(m - 1, m) = 0;
      form.gram(m, m - 1) = 0;
      form.gram(m - 1, m - 1) = 1;
      form.gram(m, m) = F.neg(F.least_nonresidue());
      break;
    case FormKind::OrthogonalOdd: form.gram(m, m) = F.least_nonresidue(); break;
  }
  return form;
}

GlSlGenerators gl_sl_generators(std::size_t d, std::uint32_t p) {
  if (d < 1) throw std::invalid_argument("gl_sl_generators: d must be positive");
  const PrimeField F(p);
  const Residue w = F.primitive_root();
  GlSlGenerators out;
  if (d == 1) {
    out.gl.push_back(FpMatrix::scalar(1, w, p));
    out.sl.push_back(FpMatrix::identity(1, p));
    return out;
  }
  FpMatrix a = FpMatrix::identity(d, p);
  a(0, 0) = w;
  FpMatrix b(d, d, p);
  b(0, 0) = p - 1;
  b(0, d - 1) = 1;
  for (std::size_t i = 1; i < d; ++i) b(i, i - 1) = p - 1;
  FpMatrix s = FpMatrix::identity(d, p);
  s(0, 0) = w;
  s(1, 1) = F.inv(w);
  out.gl = {a, b};
  out.sl = {s, b};
  return out;
}

GeneratorSet build_generators(const SubgroupSpec& spec, std::size_t d, std::uint32_t p) {
  spec.validate(d, p);
  GeneratorSet set;
  set.spec = spec;
  set.d = d;
  set.p = p;
  set.object.cls = spec.cls;
  auto& gens = set.gens;
  switch (spec.cls) {
    case SubgroupClass::C1: {
      const std::size_t r = spec.r;
      for (const auto& g : gl_sl_generators(r, p).gl) push_unique(gens, embed_top_left(g, d));
      for (const auto& g : gl_sl_generators(d - r, p).gl) push_unique(gens, embed_at(g, r, d));
      FpMatrix e = FpMatrix::identity(d, p);
      e(r, 0) = 1;
      push_unique(gens, e);
      std::vector<Vec> basis;
      for (std::size_t i = 0; i < r; ++i) {
        Vec v(d, 0);
        v[i] = 1;
        basis.push_back(v);
      }
      set.object.subspace = Subspace::span(basis, d, p);
      break;
    }
    case SubgroupClass::C2: {
      const std::size_t k = d / spec.r;
      for (const auto& g : gl_sl_generators(k, p).gl) push_unique(gens, embed_top_left(g, d));
      push_unique(gens, block_permutation(cycle_perm(spec.r), k, p));
      push_unique(gens, block_permutation(swap_perm(spec.r), k, p));
      set.object.block_size = k;
      set.object.block_count = spec.r;
      break;
    }
    case SubgroupClass::C3: {
      const ExtFieldData E = build_ext_field(p, static_cast<std::uint32_t>(spec.r));
      const std::size_t k = d / spec.r;
      for (auto& g : extension_gl_generators(E, k)) push_unique(gens, std::move(g));
      push_unique(gens, block_diagonal(std::vector<FpMatrix>(k, E.frobenius), p));
      set.object.field_scalar = block_diagonal(std::vector<FpMatrix>(k, E.mult_tables.at(1 % spec.r)), p);
      set.object.field_degree = spec.r;
      break;
    }
    case SubgroupClass::C4: {
      const FpMatrix i1 = FpMatrix::identity(spec.d1, p), i2 = FpMatrix::identity(spec.d2, p);
      for (const auto& g : gl_sl_generators(spec.d1, p).gl) push_unique(gens, kronecker(g, i2));
      for (const auto& h : gl_sl_generators(spec.d2, p).gl) push_unique(gens, kronecker(i1, h));
      set.object.tensor_factors = {spec.d1, spec.d2};
      break;
    }
    case SubgroupClass::C7: {
      const std::size_t t = spec.t, r = spec.r;
      const FpMatrix id = FpMatrix::identity(t, p);
      for (const auto& g : gl_sl_generators(t, p).gl)
        for (std::size_t slot = 0; slot < r; ++slot) {
          FpMatrix acc = slot == 0 ? g : id;
          for (std::size_t s = 1; s < r; ++s) acc = kronecker(acc, s == slot ? g : id);
          push_unique(gens, acc);
        }
      push_unique(gens, slot_permutation_matrix(cycle_perm(r), t, p));
      push_unique(gens, slot_permutation_matrix(swap_perm(r), t, p));
      set.object.tensor_factors.assign(r, t);
      set.object.factors_permutable = true;
      break;
    }
    case SubgroupClass::C8: {
      FormSpec form = standard_form(*spec.form, d, p);
      for (auto& g : isometry_generators(form, d, p)) push_unique(gens, std::move(g));
      push_unique(gens, FpMatrix::scalar(d, PrimeField(p).primitive_root(), p));
      push_unique(gens, proper_similitude(form, d, p));
      for (const auto& g : gens) {
        const auto delta = similitude_character(g, form.gram);
        if (!delta) throw std::logic_error("C8 generator is not a similitude");
        set.similitude_characters.push_back(*delta);
      }
      set.object.form = std::move(form);
      break;
    }
  }
  return set;
}

std::optional<Residue> similitude_character(const FpMatrix& g, const FpMatrix& gram) {
  const FpMatrix img = g * gram * transpose(g);
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (gram(i, j) != 0) {
        const PrimeField F(gram.modulus());
        const Residue delta = F.mul(img(i, j), F.inv(gram(i, j)));
        if (img == scaled(gram, delta) && delta != 0) return delta;
        return std::nullopt;
      }
  return std::nullopt;
}

bool is_kronecker_product(const FpMatrix& m, const std::vector<std::size_t>& factors) {
  if (factors.size() <= 1) return true;
  const std::size_t a = factors[0];
  const std::size_t b = m.rows() / a;
  const FpMatrix re = kronecker_rearrange(m, a, b);
  if (rank(re) != 1) return false;
  for (std::size_t i = 0; i < re.rows(); ++i) {
    const auto row = re.row(i);
    if (std::all_of(row.begin(), row.end(), [](Residue x) { return x == 0; })) continue;
    FpMatrix rest(b, b, m.modulus());
    for (std::size_t i2 = 0; i2 < b; ++i2)
      for (std::size_t j2 = 0; j2 < b; ++j2) rest(i2, j2) = row[i2 * b + j2];
    return is_kronecker_product(rest, std::vector<std::size_t>(factors.begin() + 1, factors.end()));
  }
  return false;
}

FpMatrix slot_permutation_matrix(const std::vector<std::size_t>& sigma, std::size_t t, std::uint32_t p) {
  const std::size_t r = sigma.size();
  const std::size_t n = ipow(t, r);
  FpMatrix out(n, n, p);
  std::vector<std::size_t> digits(r), moved(r);
  for (std::size_t code = 0; code < n; ++code) {
    std::size_t c = code;
    for (std::size_t k = r; k-- > 0; c /= t) digits[k] = c % t;
    for (std::size_t k = 0; k < r; ++k) moved[sigma[k]] = digits[k];
    std::size_t target = 0;
    for (std::size_t k = 0; k < r; ++k) target = target * t + moved[k];
    out(code, target) = 1;
  }
  return out;
}

std::optional<std::vector<std::size_t>> induced_permutation(const FpMatrix& g, const StabilizedObject& object) {
  if (object.cls == SubgroupClass::C2) {
    const std::size_t k = object.block_size, r = object.block_count;
    std::vector<std::size_t> perm(r);
    std::vector<bool> hit(r, false);
    for (std::size_t i = 0; i < r; ++i) {
      std::optional<std::size_t> target;
      for (std::size_t row = i * k; row < (i + 1) * k; ++row)
        for (std::size_t col = 0; col < g.cols(); ++col)
          if (g(row, col) != 0) {
            const std::size_t blk = col / k;
            if (target && *target != blk) return std::nullopt;
            target = blk;
          }
      if (!target || hit[*target]) return std::nullopt;
      hit[*target] = true;
      perm[i] = *target;
    }
    return perm;
  }
  if (object.cls == SubgroupClass::C7 || object.cls == SubgroupClass::C4) {
    const auto& f = object.tensor_factors;
    const std::size_t r = f.size();
    const std::size_t t = f.empty() ? 0 : f[0];
    for (const auto& sigma : all_permutations(r)) {
      bool identity = std::is_sorted(sigma.begin(), sigma.end());
      if (!identity && !object.factors_permutable) continue;
      const FpMatrix h = identity ? g : g * invert(slot_permutation_matrix(sigma, t, g.modulus()));
      if (is_kronecker_product(h, f)) return sigma;
    }
    return std::nullopt;
  }
  return std::nullopt;
}

bool stabilizes(const FpMatrix& g, const StabilizedObject& object) {
  switch (object.cls) {
    case SubgroupClass::C1: {
      const Subspace& u = *object.subspace;
      for (const auto& row : u.rows())
        if (!u.contains(vec_mat(row, g))) return false;
      return true;
    }
    case SubgroupClass::C2:
    case SubgroupClass::C4:
    case SubgroupClass::C7: return induced_permutation(g, object).has_value();
    case SubgroupClass::C3: {
      const FpMatrix& s = *object.field_scalar;
      const std::uint32_t p = s.modulus();
      Subspace algebra(s.rows() * s.cols(), p);
      FpMatrix power = FpMatrix::identity(s.rows(), p);
      for (std::size_t i = 0; i < object.field_degree; ++i) {
        algebra.insert(power.data());
        power = power * s;
      }
      const FpMatrix conj = invert(g) * s * g;
      return algebra.contains(conj.data());
    }
    case SubgroupClass::C8: return similitude_character(g, object.form->gram).has_value();
  }
  return false;
}

std::string generator_set_to_json(const GeneratorSet& set) {
  using nlohmann::json;
  json j;
  j["class"] = to_string(set.spec.cls);
  json params = json::object();
  for (const auto& item : set.spec.params()) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "form") params[key] = value;
    else params[key] = std::stoull(value);
  }
  j["params"] = params;
  j["p"] = set.p;
  j["d"] = set.d;
  json gens = json::array();
  for (const auto& g : set.gens) gens.push_back(g.data());
  j["gens"] = gens;
  json obj;
  const auto& o = set.object;
  switch (o.cls) {
    case SubgroupClass::C1:
      obj = {{"kind", "subspace"}, {"basis", o.subspace->rows()}};
      break;
    case SubgroupClass::C2:
      obj = {{"kind", "blocks"}, {"block_size", o.block_size}, {"block_count", o.block_count}};
      break;
    case SubgroupClass::C3:
      obj = {{"kind", "field"}, {"degree", o.field_degree}, {"scalar", o.field_scalar->data()}};
      break;
    case SubgroupClass::C4:
    case SubgroupClass::C7:
      obj = {{"kind", "tensor"}, {"factors", o.tensor_factors}, {"permutable", o.factors_permutable}};
      break;
    case SubgroupClass::C8:
      obj = {{"kind", "form"}, {"form", to_string(o.form->kind)}, {"gram", o.form->gram.data()}};
      break;
  }
  j["stabilized_object"] = obj;
  j["similitude_characters"] = set.similitude_characters;
  return j.dump();
}

}  // namespace maxsym

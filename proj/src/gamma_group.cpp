#include "maxsym/gamma_group.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace maxsym {

namespace {

void add_into(Vec& acc, const Vec& v, Residue scale, std::uint32_t p) {
  if (scale == 0) return;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = static_cast<Residue>((acc[i] + std::uint64_t{scale} * v[i]) % p);
}

Vec sum(const Vec& a, const Vec& b, std::uint32_t p) {
  Vec out(a);
  add_into(out, b, 1, p);
  return out;
}

Vec difference(const Vec& a, const Vec& b, std::uint32_t p) {
  Vec out(a);
  add_into(out, b, p - 1, p);
  return out;
}

bool is_identity(const GammaElement& a) {
  for (const auto& v : a.coords)
    for (auto x : v)
      if (x != 0) return false;
  return true;
}

}  // namespace

GammaContext::GammaContext(std::shared_ptr<const LieAlgebra> lie, std::size_t n, std::optional<Subspace> quotient)
    : lie_(std::move(lie)), n_(n), quotient_(std::move(quotient)) {
  if (!lie_) throw std::invalid_argument("GammaContext: missing Lie data");
  if (n < 1 || n > 4) throw std::invalid_argument("GammaContext: n must lie in 1..4");
  if (lie_->max_degree() < n) throw std::invalid_argument("GammaContext: Lie data stops below degree n");
  if (lie_->p() <= n) throw std::invalid_argument("GammaContext: requires p > n");
  if (quotient_ && (quotient_->ambient_dim() != lie_->dim(n) || quotient_->modulus() != lie_->p()))
    throw std::invalid_argument("GammaContext: quotient subspace does not live in the top Lie power");
}

GammaContext GammaContext::create(std::size_t d, std::uint32_t p, std::size_t n) {
  return GammaContext(std::make_shared<const LieAlgebra>(d, p, n), n);
}

GammaContext GammaContext::quotient_by(const Subspace& m) const { return GammaContext(lie_, n_, m); }

Vec GammaContext::reduce_top(Vec v) const {
  if (quotient_ && !quotient_->is_zero()) return quotient_->reduce(v);
  return v;
}

GammaElement GammaContext::identity() const {
  GammaElement e;
  for (std::size_t k = 1; k <= n_; ++k) e.coords.emplace_back(dim(k), 0);
  return e;
}

GammaElement GammaContext::generator(std::size_t i) const {
  if (i >= d()) throw std::out_of_range("GammaContext::generator: index out of range");
  GammaElement e = identity();
  e.coords[0][i] = 1;
  return e;
}

GammaElement GammaContext::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<Residue> dist(0, p() - 1);
  GammaElement e = identity();
  for (auto& v : e.coords)
    for (auto& x : v) x = dist(rng);
  e.coords.back() = reduce_top(std::move(e.coords.back()));
  return e;
}

GammaElement GammaContext::make(std::vector<Vec> coords) const {
  if (coords.size() != n_) throw std::invalid_argument("GammaContext::make: expected " + std::to_string(n_) + " coordinates");
  for (std::size_t k = 1; k <= n_; ++k) {
    if (coords[k - 1].size() != dim(k))
      throw std::invalid_argument("GammaContext::make: coordinate " + std::to_string(k) + " has wrong length");
    for (auto x : coords[k - 1])
      if (x >= p()) throw std::invalid_argument("GammaContext::make: entry not reduced mod p");
  }
  coords.back() = reduce_top(std::move(coords.back()));
  return GammaElement{std::move(coords)};
}

void GammaContext::check(const GammaElement& a) const {
  if (a.coords.size() != n_) throw std::invalid_argument("element does not belong to this context (length)");
  for (std::size_t k = 1; k <= n_; ++k)
    if (a.coords[k - 1].size() != dim(k)) throw std::invalid_argument("element does not belong to this context (degree " + std::to_string(k) + ")");
}

GammaElement multiply(const GammaElement& a, const GammaElement& b, const GammaContext& ctx) {
  ctx.check(a);
  ctx.check(b);
  const auto& L = ctx.lie();
  const std::uint32_t p = ctx.p();
  const std::size_t n = ctx.n();
  GammaElement c;
  c.coords.resize(n);
  const Vec& v1 = a.coords[0];
  const Vec& w1 = b.coords[0];
  c.coords[0] = sum(v1, w1, p);
  if (n >= 2) {
    const Vec& v2 = a.coords[1];
    const Vec& w2 = b.coords[1];
    const Vec b11 = L.bracket(1, v1, 1, w1);
    c.coords[1] = sum(v2, w2, p);
    add_into(c.coords[1], b11, 1, p);
    if (n >= 3) {
      const Vec& v3 = a.coords[2];
      const Vec& w3 = b.coords[2];
      const Vec d1 = difference(w1, v1, p);
      c.coords[2] = sum(v3, w3, p);
      add_into(c.coords[2], L.bracket(1, v1, 2, w2), 3, p);
      add_into(c.coords[2], L.bracket(2, v2, 1, w1), 3, p);
      add_into(c.coords[2], L.bracket(2, b11, 1, d1), 1, p);
      if (n >= 4) {
        const Vec& v4 = a.coords[3];
        const Vec& w4 = b.coords[3];
        Vec& c4 = c.coords[3];
        c4 = sum(v4, w4, p);
        add_into(c4, L.bracket(1, v1, 3, w3), 1, p);
        add_into(c4, L.bracket(2, v2, 2, w2), 3, p);
        add_into(c4, L.bracket(3, v3, 1, w1), 1, p);
        add_into(c4, L.bracket(3, L.bracket(2, v2, 1, w1), 1, d1), 1, p);
        add_into(c4, L.bracket(3, L.bracket(1, v1, 2, w2), 1, d1), 1, p);
        add_into(c4, L.bracket(2, b11, 2, difference(w2, v2, p)), 1, p);
        add_into(c4, L.bracket(3, L.bracket(2, b11, 1, v1), 1, w1), p - 1, p);
      }
    }
  }
  return ctx.make(std::move(c.coords));
}

GammaElement inverse(const GammaElement& a, const GammaContext& ctx) {
  ctx.check(a);
  GammaElement r = a;
  const std::uint32_t p = ctx.p();
  for (auto& v : r.coords)
    for (auto& x : v) x = x == 0 ? 0 : p - x;
  return ctx.make(std::move(r.coords));
}

GammaElement power(const GammaElement& a, std::int64_t k, const GammaContext& ctx) {
  GammaElement base = k < 0 ? inverse(a, ctx) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GammaElement result = ctx.identity();
  while (e > 0) {
    if (e & 1U) result = multiply(result, base, ctx);
    e >>= 1U;
    if (e > 0) base = multiply(base, base, ctx);
  }
  return result;
}

GammaElement commutator(const std::vector<GammaElement>& elements, const GammaContext& ctx) {
  if (elements.size() < 2) throw std::invalid_argument("commutator: need at least two elements");
  if (elements.size() > ctx.n())
    throw std::invalid_argument("commutator: length " + std::to_string(elements.size()) + " exceeds n = " + std::to_string(ctx.n()));
  GammaElement acc = elements.front();
  for (std::size_t k = 1; k < elements.size(); ++k) {
    const GammaElement& y = elements[k];
    acc = multiply(multiply(inverse(acc, ctx), inverse(y, ctx), ctx), multiply(acc, y, ctx), ctx);
  }
  return acc;
}

Automorphism::Automorphism(const FpMatrix& g, const GammaContext& ctx) : g_(g), ctx_(&ctx) {
  if (!g.is_square() || g.rows() != ctx.d() || g.modulus() != ctx.p())
    throw std::invalid_argument("Automorphism: matrix does not act on the generating space");
  if (determinant(g) == 0) throw SingularMatrixError(g.rows(), rank(g));
  for (std::size_t k = 1; k <= ctx.n(); ++k) actions_.push_back(ctx.lie().induced_action(g, k));
  if (const auto& M = ctx.quotient()) {
    for (const auto& row : M->rows()) {
      const Vec img = vec_mat(row, actions_.back());
      if (!M->contains(img))
        throw NotStabilizingError(row, "Automorphism: matrix does not stabilise the quotient subspace");
    }
  }
}

GammaElement Automorphism::apply(const GammaElement& a) const {
  ctx_->check(a);
  std::vector<Vec> coords;
  for (std::size_t k = 0; k < a.coords.size(); ++k) coords.push_back(vec_mat(a.coords[k], actions_[k]));
  return ctx_->make(std::move(coords));
}

GammaElement apply_automorphism(const FpMatrix& g, const GammaElement& a, const GammaContext& ctx) {
  return Automorphism(g, ctx).apply(a);
}

std::size_t group_order_exponent(const GammaContext& ctx) {
  std::size_t m = 0;
  for (std::size_t k = 1; k <= ctx.n(); ++k) m += ctx.dim(k);
  if (ctx.quotient()) m -= ctx.quotient()->dim();
  return m;
}

ClassWitness nilpotency_class(const GammaContext& ctx, std::uint64_t seed, std::size_t budget) {
  const std::size_t d = ctx.d();
  std::mt19937_64 rng(seed);
  for (std::size_t l = ctx.n(); l >= 2; --l) {
    std::vector<std::size_t> idx(l, 0);
    for (;;) {
      std::vector<GammaElement> args;
      for (auto i : idx) args.push_back(ctx.generator(i));
      GammaElement c = commutator(args, ctx);
      if (!is_identity(c)) return ClassWitness{l, std::move(args), std::move(c), true};
      std::size_t pos = l;
      while (pos > 0 && ++idx[pos - 1] == d) idx[--pos] = 0;
      if (pos == 0) break;
    }
    for (std::size_t trial = 0; trial < budget; ++trial) {
      std::vector<GammaElement> args;
      for (std::size_t k = 0; k < l; ++k) args.push_back(ctx.random(rng));
      GammaElement c = commutator(args, ctx);
      if (!is_identity(c)) return ClassWitness{l, std::move(args), std::move(c), false};
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    GammaElement g = ctx.generator(i);
    if (!is_identity(g)) return ClassWitness{1, {g}, g, true};
  }
  return ClassWitness{0, {}, ctx.identity(), true};
}

std::uint64_t commutator_multiplier(std::size_t n) {
  switch (n) {
    case 2: return 2;
    case 3: return 12;
    case 4: return 24;
  }
  throw std::invalid_argument("commutator_multiplier: n must be 2, 3 or 4");
}

bool GroupLawReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const LawCheck& c) { return c.failures == 0; });
}

GroupLawReport verify_group_laws(const GammaContext& ctx, std::size_t trials, std::uint64_t seed) {
  if (ctx.quotient()) throw std::invalid_argument("verify_group_laws: context has a quotient");
  const std::size_t n = ctx.n();
  const std::uint32_t p = ctx.p();
  std::mt19937_64 rng(seed);
  auto fail = [](LawCheck& c, const std::vector<GammaElement>& xs) {
    if (c.failures++ == 0) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& x : xs) j.push_back(x.coords);
      c.first_failure = j.dump();
    }
  };

  LawCheck assoc{"associativity", 0, 0, ""};
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = ctx.random(rng), b = ctx.random(rng), c = ctx.random(rng);
    ++assoc.checked;
    if (multiply(multiply(a, b, ctx), c, ctx) != multiply(a, multiply(b, c, ctx), ctx)) fail(assoc, {a, b, c});
  }

  LawCheck expo{"exponent", 0, 0, ""};
  const GammaElement e = ctx.identity();
  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = ctx.random(rng);
    ++expo.checked;
    if (power(a, p, ctx) != e) fail(expo, {a});
  }

  LawCheck comm{"commutator", 0, 0, ""};
  const std::uint64_t mult = commutator_multiplier(n) % p;
  auto check_tuple = [&](const std::vector<GammaElement>& xs) {
    std::vector<Vec> firsts;
    for (const auto& x : xs) firsts.push_back(x.coords.front());
    Vec top = ctx.lie().left_normed(firsts);
    for (auto& v : top) v = static_cast<Residue>(v * mult % p);
    GammaElement want = ctx.identity();
    want.coords.back() = top;
    ++comm.checked;
    if (commutator(xs, ctx) != want) fail(comm, xs);
  };
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<GammaElement> xs;
    for (auto i : idx) xs.push_back(ctx.generator(i));
    check_tuple(xs);
    std::size_t k = 0;
    while (k < n && ++idx[k] == ctx.d()) idx[k++] = 0;
    if (k == n) break;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<GammaElement> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(ctx.random(rng));
    check_tuple(xs);
  }
  return {{assoc, expo, comm}};
}

std::string element_to_json(const GammaElement& a) { return nlohmann::json(a.coords).dump(); }

GammaElement element_from_json(const std::string& text, const GammaContext& ctx) {
  const auto j = nlohmann::json::parse(text);
  return ctx.make(j.get<std::vector<Vec>>());
}

}  // namespace maxsym

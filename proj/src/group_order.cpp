#include "maxsym/group_order.hpp"

#include <deque>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace maxsym {

namespace {

std::uint64_t encode(const FpMatrix& m) {
  std::uint64_t code = 0;
  for (auto x : m.data()) code = code * m.modulus() + x;
  return code;
}

std::uint64_t encode_vec(std::span<const Residue> v, std::uint32_t p) {
  std::uint64_t code = 0;
  for (auto x : v) code = code * p + x;
  return code;
}

void require_group_input(const std::vector<FpMatrix>& gens) {
  if (gens.empty()) throw std::invalid_argument("group order: empty generator list");
  for (const auto& g : gens)
    if (!g.is_square() || g.rows() != gens.front().rows() || g.modulus() != gens.front().modulus())
      throw std::invalid_argument("group order: generators must be square of equal size");
}

struct Level {
  std::uint64_t base_point = 0;
  std::vector<FpMatrix> gens;
  std::map<std::uint64_t, std::pair<FpMatrix, FpMatrix>> transversal;  // point -> (u, u^-1)
};

class StabChain {
 public:
  StabChain(std::size_t d, std::uint32_t p) : d_(d), p_(p) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec e(d, 0);
      e[i] = 1;
      levels_.push_back(Level{encode_vec(e, p), {}, {}});
    }
  }

  std::size_t depth() const { return levels_.size(); }
  Level& level(std::size_t i) { return levels_[i]; }

  void rebuild_orbit(std::size_t i) {
    Level& L = levels_[i];
    L.transversal.clear();
    const FpMatrix id = FpMatrix::identity(d_, p_);
    L.transversal.emplace(L.base_point, std::make_pair(id, id));
    std::deque<std::uint64_t> queue{L.base_point};
    while (!queue.empty()) {
      const std::uint64_t pt = queue.front();
      queue.pop_front();
      const FpMatrix u = L.transversal.at(pt).first;
      for (const auto& s : L.gens) {
        const std::uint64_t img = image(pt, s);
        if (L.transversal.count(img)) continue;
        FpMatrix us = u * s;
        FpMatrix inv = invert(us);
        L.transversal.emplace(img, std::make_pair(std::move(us), std::move(inv)));
        queue.push_back(img);
      }
    }
  }

  /// Sifts h from level `from`; returns the residue and the level where it stopped
  /// (depth() when it sifted through).
  std::pair<FpMatrix, std::size_t> strip(FpMatrix h, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const std::uint64_t img = image(levels_[i].base_point, h);
      auto it = levels_[i].transversal.find(img);
      if (it == levels_[i].transversal.end()) return {h, i};
      h = h * it->second.second;
    }
    return {h, levels_.size()};
  }

  std::uint64_t image(std::uint64_t code, const FpMatrix& g) const {
    Vec v(d_);
    for (std::size_t k = d_; k-- > 0;) {
      v[k] = static_cast<Residue>(code % p_);
      code /= p_;
    }
    return encode_vec(vec_mat(v, g), p_);
  }

 private:
  std::size_t d_;
  std::uint32_t p_;
  std::vector<Level> levels_;
};

}  // namespace

std::uint64_t closure_order(const std::vector<FpMatrix>& gens, std::uint64_t limit) {
  require_group_input(gens);
  const FpMatrix id = FpMatrix::identity(gens.front().rows(), gens.front().modulus());
  std::unordered_set<std::uint64_t> seen{encode(id)};
  std::deque<FpMatrix> queue{id};
  while (!queue.empty()) {
    const FpMatrix x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      FpMatrix y = x * g;
      if (seen.insert(encode(y)).second) {
        if (seen.size() > limit) throw std::length_error("closure_order: element limit exceeded");
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

std::uint64_t schreier_sims_order(const std::vector<FpMatrix>& gens) {
  require_group_input(gens);
  const std::size_t d = gens.front().rows();
  const std::uint32_t p = gens.front().modulus();
  StabChain chain(d, p);
  for (const auto& g : gens)
    if (!g.is_identity()) chain.level(0).gens.push_back(g);
  // Every generator fixing the first base points also belongs to the deeper levels.
  for (std::size_t i = 1; i < d; ++i)
    for (const auto& g : chain.level(i - 1).gens)
      if (chain.image(chain.level(i - 1).base_point, g) == chain.level(i - 1).base_point)
        chain.level(i).gens.push_back(g);
  for (std::size_t i = 0; i < d; ++i) chain.rebuild_orbit(i);

  std::size_t i = d;
  while (i-- > 0) {
  restart:
    Level& L = chain.level(i);
    for (const auto& [pt, uu] : L.transversal) {
      bool restarted = false;
      for (const auto& s : L.gens) {
        const std::uint64_t img = chain.image(pt, s);
        const FpMatrix h = uu.first * s * L.transversal.at(img).second;
        auto [residue, stop] = chain.strip(h, i + 1);
        if (stop == d && residue.is_identity()) continue;
        const std::size_t upto = std::min(stop, d - 1);
        for (std::size_t l = i + 1; l <= upto; ++l) {
          chain.level(l).gens.push_back(residue);
          chain.rebuild_orbit(l);
        }
        i = upto;
        restarted = true;
        break;
      }
      if (restarted) goto restart;
    }
  }

  unsigned __int128 order = 1;
  for (std::size_t l = 0; l < d; ++l) {
    order *= chain.level(l).transversal.size();
    if (order > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("schreier_sims_order: order exceeds 2^64");
  }
  return static_cast<std::uint64_t>(order);
}

std::uint64_t permutation_group_order(const std::vector<std::vector<std::size_t>>& perms) {
  if (perms.empty()) return 1;
  const std::size_t n = perms.front().size();
  std::vector<std::size_t> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<std::size_t>> seen{id};
  std::deque<std::vector<std::size_t>> queue{id};
  while (!queue.empty()) {
    const auto x = queue.front();
    queue.pop_front();
    for (const auto& g : perms) {
      std::vector<std::size_t> y(n);
      for (std::size_t k = 0; k < n; ++k) y[k] = g[x[k]];
      if (seen.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return seen.size();
}

}  // namespace maxsym

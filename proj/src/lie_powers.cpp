#include "maxsym/lie_powers.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace maxsym {

namespace {

constexpr int kCacheFormatVersion = 1;

__int128 checked_pow(std::uint64_t base, std::uint64_t e) {
  __int128 r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r *= base;
    if (r > (static_cast<__int128>(1) << 100)) throw std::overflow_error("witt_dims: value too large");
  }
  return r;
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

Subspace next_lie_power(const Subspace& prev, std::size_t d, std::uint32_t p, std::size_t k) {
  const std::size_t target = witt_dims(d, k, p);
  Subspace next(ipow(d, k), p);
  for (const auto& x : prev.rows()) {
    for (std::size_t j = 0; j < d && next.dim() < target; ++j) {
      Vec e(d, 0);
      e[j] = 1;
      next.insert(tensor_bracket(x, k - 1, e, 1, d, p));
    }
    if (next.dim() == target) break;
  }
  return next;
}

}  // namespace

int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius: n must be positive");
  int mu = 1;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    n /= q;
    if (n % q == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t result = n;
  for (auto q : prime_divisors(n)) result = result / q * (q - 1);
  return result;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t witt_dims(std::uint64_t d, std::uint64_t k, std::uint32_t p) {
  if (d < 1 || k < 1) throw std::invalid_argument("witt_dims: d and k must be positive");
  if (!is_prime(p)) throw std::invalid_argument("witt_dims: p must be prime");
  if (p <= k)
    throw std::invalid_argument("witt_dims: requires p > k (got p=" + std::to_string(p) +
                                ", k=" + std::to_string(k) + ")");
  __int128 sum = 0;
  for (std::uint64_t i = 1; i <= k; ++i)
    if (k % i == 0) sum += mobius(i) * checked_pow(d, k / i);
  if (sum % k != 0 || sum < 0) throw std::logic_error("witt_dims: non-integral result");
  return static_cast<std::uint64_t>(sum / k);
}

std::uint64_t witt_dims_modular(std::uint64_t d, std::uint64_t k, std::uint32_t p) {
  if (d < 1 || k < 1) throw std::invalid_argument("witt_dims_modular: d and k must be positive");
  if (!is_prime(p)) throw std::invalid_argument("witt_dims_modular: p must be prime");
  __int128 sum = 0;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (k % i != 0) continue;
    std::uint64_t i0 = i;
    std::uint64_t ph = 1;
    while (i0 % p == 0) {
      i0 /= p;
      ph *= p;
    }
    sum += mobius(i0) * static_cast<__int128>(euler_phi(ph)) * checked_pow(d, k / i);
  }
  if (sum % k != 0 || sum < 0) throw std::logic_error("witt_dims_modular: non-integral result");
  return static_cast<std::uint64_t>(sum / k);
}

std::size_t TensorIndexSpace::dim() const { return ipow(d, n); }

std::size_t TensorIndexSpace::flat(std::span<const std::size_t> index) const {
  if (index.size() != n) throw std::invalid_argument("TensorIndexSpace::flat: wrong arity");
  std::size_t f = 0;
  for (auto i : index) {
    if (i >= d) throw std::out_of_range("TensorIndexSpace::flat: index out of range");
    f = f * d + i;
  }
  return f;
}

std::vector<std::size_t> TensorIndexSpace::multi(std::size_t flat_index) const {
  std::vector<std::size_t> idx(n);
  for (std::size_t k = n; k-- > 0;) {
    idx[k] = flat_index % d;
    flat_index /= d;
  }
  return idx;
}

Vec tensor_product(std::span<const Residue> a, std::span<const Residue> b, std::uint32_t p) {
  Vec out(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = (a[i] * b[j]) % p;
  }
  return out;
}

Vec tensor_bracket(std::span<const Residue> a, std::size_t deg_a, std::span<const Residue> b,
                   std::size_t deg_b, std::size_t d, std::uint32_t p) {
  if (a.size() != ipow(d, deg_a) || b.size() != ipow(d, deg_b))
    throw std::invalid_argument("tensor_bracket: length does not match degree");
  Vec ab = tensor_product(a, b, p);
  const Vec ba = tensor_product(b, a, p);
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = ab[i] >= ba[i] ? ab[i] - ba[i] : ab[i] + p - ba[i];
  return ab;
}

Vec apply_tensor_power(std::span<const Residue> x, const FpMatrix& g, std::size_t n) {
  const std::size_t d = g.rows();
  const std::uint32_t p = g.modulus();
  if (x.size() != ipow(d, n)) throw std::invalid_argument("apply_tensor_power: length mismatch");
  Vec cur(x.begin(), x.end());
  std::vector<std::uint64_t> acc(cur.size());
  for (std::size_t mode = 0; mode < n; ++mode) {
    const std::size_t inner = ipow(d, n - 1 - mode);
    const std::size_t outer = cur.size() / (inner * d);
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t src = (o * d + j) * inner;
        for (std::size_t jj = 0; jj < d; ++jj) {
          const std::uint64_t c = g(j, jj);
          if (c == 0) continue;
          const std::size_t dst = (o * d + jj) * inner;
          for (std::size_t in = 0; in < inner; ++in) acc[dst + in] += c * cur[src + in];
        }
      }
    for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = static_cast<Residue>(acc[i] % p);
  }
  return cur;
}

FpMatrix induced_action(const FpMatrix& g, const Subspace& space, std::size_t n, bool verify) {
  if (!g.is_square() || space.ambient_dim() != ipow(g.rows(), n))
    throw std::invalid_argument("induced_action: dimension mismatch");
  FpMatrix out(space.dim(), space.dim(), g.modulus());
  for (std::size_t k = 0; k < space.dim(); ++k) {
    const Vec img = apply_tensor_power(space.rows()[k], g, n);
    if (verify && !space.contains(img))
      throw NotInvariantError(k, "induced_action: image of basis row " + std::to_string(k) +
                                     " leaves the subspace");
    const Vec c = space.pivot_coordinates(img);
    std::copy(c.begin(), c.end(), out.row(k).begin());
  }
  return out;
}

LiePowerSpace build_lie_power(std::size_t d, std::uint32_t p, std::size_t n) {
  if (n < 1) throw std::invalid_argument("build_lie_power: degree must be positive");
  if (p <= n) throw std::invalid_argument("build_lie_power: requires p > n");
  LiePowerSpace L{d, 1, p, Subspace::full(d, p)};
  for (std::size_t k = 2; k <= n; ++k) L = LiePowerSpace{d, k, p, next_lie_power(L.space, d, p, k)};
  return L;
}

SymAltSpaces build_sym_alt(std::size_t d, std::uint32_t p, std::size_t n) {
  if (n != 2 && n != 3) throw std::invalid_argument("build_sym_alt: n must be 2 or 3");
  const PrimeField F(p);
  if (p <= n) throw std::invalid_argument("build_sym_alt: requires p > n");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<std::vector<std::size_t>, bool>> perms;  // (sigma, odd)
  do {
    std::size_t inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (perm[a] > perm[b]) ++inversions;
    perms.emplace_back(perm, inversions % 2 == 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Residue inv_fact = F.inv(static_cast<Residue>(perms.size()));

  const TensorIndexSpace T{d, n};
  SymAltSpaces S{d, n, p, Subspace(T.dim(), p), Subspace(T.dim(), p), Subspace(T.dim(), p)};
  for (std::size_t f = 0; f < T.dim(); ++f) {
    const auto idx = T.multi(f);
    Vec sym(T.dim(), 0);
    Vec alt(T.dim(), 0);
    for (const auto& [sigma, odd] : perms) {
      std::vector<std::size_t> permuted(n);
      for (std::size_t k = 0; k < n; ++k) permuted[k] = idx[sigma[k]];
      const std::size_t g = T.flat(permuted);
      sym[g] = F.add(sym[g], inv_fact);
      alt[g] = odd ? F.sub(alt[g], inv_fact) : F.add(alt[g], inv_fact);
    }
    S.sym.insert(sym);
    S.alt.insert(alt);
    if (n == 3) {
      Vec rest(T.dim(), 0);
      rest[f] = 1;
      for (std::size_t k = 0; k < rest.size(); ++k) rest[k] = F.sub(F.sub(rest[k], sym[k]), alt[k]);
      S.mixed.insert(rest);
    }
  }
  return S;
}

// ---------------------------------------------------------------------------

LieAlgebra::LieAlgebra(std::size_t d, std::uint32_t p, std::size_t max_degree) : d_(d), p_(p) {
  if (d < 1) throw std::invalid_argument("LieAlgebra: d must be positive");
  if (max_degree < 1) throw std::invalid_argument("LieAlgebra: degree must be positive");
  if (p <= max_degree) throw std::invalid_argument("LieAlgebra: requires p > degree");
  (void)PrimeField(p);
  powers_.push_back(LiePowerSpace{d, 1, p, Subspace::full(d, p)});
  for (std::size_t k = 2; k <= max_degree; ++k)
    powers_.push_back(LiePowerSpace{d, k, p, next_lie_power(powers_.back().space, d, p, k)});
  build_tables();
}

void LieAlgebra::build_tables() {
  const std::size_t n = powers_.size();
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 1; i + j <= n; ++j) {
      const auto& A = power(i).space;
      const auto& B = power(j).space;
      const auto& C = power(i + j).space;
      FpMatrix t(A.dim() * B.dim(), C.dim(), p_);
      for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < B.dim(); ++b) {
          const Vec br = tensor_bracket(A.rows()[a], i, B.rows()[b], j, d_, p_);
          const Vec c = C.pivot_coordinates(br);
          std::copy(c.begin(), c.end(), t.row(a * B.dim() + b).begin());
        }
      tables_.emplace(std::make_pair(i, j), std::move(t));
    }
}

const LiePowerSpace& LieAlgebra::power(std::size_t k) const {
  if (k < 1 || k > powers_.size())
    throw std::out_of_range("LieAlgebra::power: degree " + std::to_string(k) + " not available");
  return powers_[k - 1];
}

const FpMatrix& LieAlgebra::table(std::size_t i, std::size_t j) const {
  auto it = tables_.find({i, j});
  if (it == tables_.end())
    throw std::out_of_range("LieAlgebra::table: degree " + std::to_string(i + j) +
                            " exceeds the maximum " + std::to_string(powers_.size()));
  return it->second;
}

Vec LieAlgebra::bracket(std::size_t i, std::span<const Residue> u, std::size_t j,
                        std::span<const Residue> v) const {
  const FpMatrix& t = table(i, j);
  if (u.size() != dim(i) || v.size() != dim(j))
    throw std::invalid_argument("LieAlgebra::bracket: coordinate length mismatch");
  std::vector<std::uint64_t> acc(t.cols(), 0);
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (v[b] == 0) continue;
      const std::uint64_t c = (std::uint64_t{u[a]} * v[b]) % p_;
      const auto row = t.row(a * v.size() + b);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * row[k];
    }
  }
  Vec out(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) out[k] = static_cast<Residue>(acc[k] % p_);
  return out;
}

Vec LieAlgebra::left_normed(const std::vector<Vec>& xs) const {
  if (xs.empty()) throw std::invalid_argument("LieAlgebra::left_normed: empty bracket");
  Vec acc = xs.front();
  for (std::size_t k = 1; k < xs.size(); ++k) acc = bracket(k, acc, 1, xs[k]);
  return acc;
}

Vec LieAlgebra::to_tensor(std::size_t k, std::span<const Residue> coords) const {
  const auto& S = power(k).space;
  if (coords.size() != S.dim()) throw std::invalid_argument("LieAlgebra::to_tensor: length mismatch");
  std::vector<std::uint64_t> acc(S.ambient_dim(), 0);
  for (std::size_t a = 0; a < coords.size(); ++a) {
    if (coords[a] == 0) continue;
    const auto& row = S.rows()[a];
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += std::uint64_t{coords[a]} * row[i];
  }
  Vec out(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<Residue>(acc[i] % p_);
  return out;
}

Vec LieAlgebra::from_tensor(std::size_t k, std::span<const Residue> tensor) const {
  auto c = power(k).space.coordinates(tensor);
  if (!c) throw std::invalid_argument("LieAlgebra::from_tensor: tensor is not a Lie element of degree " + std::to_string(k));
  return *c;
}

FpMatrix LieAlgebra::induced_action(const FpMatrix& g, std::size_t k, bool verify) const {
  return maxsym::induced_action(g, power(k).space, k, verify);
}

std::string LieAlgebra::cache_file_name(std::size_t d, std::uint32_t p, std::size_t max_degree) {
  return "lie_p" + std::to_string(p) + "_d" + std::to_string(d) + "_n" + std::to_string(max_degree) + ".json";
}

void LieAlgebra::save(const std::filesystem::path& file) const {
  nlohmann::json j;
  j["header"] = {{"format_version", kCacheFormatVersion}, {"p", p_}, {"d", d_}, {"n", powers_.size()}};
  auto& bases = j["bases"] = nlohmann::json::array();
  for (const auto& L : powers_) bases.push_back(L.space.rows());
  auto& tables = j["tables"] = nlohmann::json::array();
  for (const auto& [key, t] : tables_)
    tables.push_back({{"i", key.first}, {"j", key.second}, {"rows", t.rows()}, {"cols", t.cols()}, {"data", t.data()}});
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tag = std::hash<std::thread::id>{}(std::this_thread::get_id());
  const auto tmp = std::filesystem::path(file.string() + "." + std::to_string(tag) + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw std::runtime_error("LieAlgebra::save: cannot write " + tmp.string());
    out << j.dump();
  }
  std::filesystem::rename(tmp, file);
}

std::optional<LieAlgebra> LieAlgebra::load(const std::filesystem::path& file, std::size_t d,
                                           std::uint32_t p, std::size_t max_degree) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    const auto j = nlohmann::json::parse(in);
    const auto& h = j.at("header");
    if (h.at("format_version").get<int>() != kCacheFormatVersion || h.at("p").get<std::uint32_t>() != p ||
        h.at("d").get<std::size_t>() != d || h.at("n").get<std::size_t>() != max_degree)
      return std::nullopt;
    LieAlgebra A;
    A.d_ = d;
    A.p_ = p;
    const auto& bases = j.at("bases");
    if (bases.size() != max_degree) return std::nullopt;
    for (std::size_t k = 1; k <= max_degree; ++k) {
      const auto rows = bases[k - 1].get<std::vector<Vec>>();
      if (rows.size() != witt_dims(d, k, p)) return std::nullopt;
      Subspace s = Subspace::span(rows, ipow(d, k), p);
      if (s.rows() != rows) return std::nullopt;
      A.powers_.push_back(LiePowerSpace{d, k, p, std::move(s)});
    }
    for (const auto& t : j.at("tables")) {
      const auto i = t.at("i").get<std::size_t>();
      const auto jj = t.at("j").get<std::size_t>();
      if (i < 1 || jj < 1 || i + jj > max_degree) return std::nullopt;
      const auto rows = t.at("rows").get<std::size_t>();
      const auto cols = t.at("cols").get<std::size_t>();
      const auto data = t.at("data").get<std::vector<Residue>>();
      if (rows != A.dim(i) * A.dim(jj) || cols != A.dim(i + jj) || data.size() != rows * cols) return std::nullopt;
      FpMatrix m(rows, cols, p);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
          if (data[r * cols + c] >= p) return std::nullopt;
          m(r, c) = data[r * cols + c];
        }
      A.tables_.emplace(std::make_pair(i, jj), std::move(m));
    }
    std::size_t expected = 0;
    for (std::size_t i = 1; i < max_degree; ++i) expected += max_degree - i;
    if (A.tables_.size() != expected) return std::nullopt;
    return A;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

LieAlgebra LieAlgebra::load_or_build(std::size_t d, std::uint32_t p, std::size_t max_degree,
                                     const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return LieAlgebra(d, p, max_degree);
  const auto file = *cache_dir / cache_file_name(d, p, max_degree);
  if (auto cached = load(file, d, p, max_degree)) return std::move(*cached);
  LieAlgebra A(d, p, max_degree);
  try {
    A.save(file);
  } catch (const std::exception&) {
    // An unwritable cache only costs a rebuild next time.
  }
  return A;
}

}  // namespace maxsym

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <random>

#include "maxsym/gamma_group.hpp"
#include "maxsym/lie_powers.hpp"
#include "maxsym/maximal_subgroups.hpp"
#include "maxsym/module.hpp"
#include "maxsym/pipeline.hpp"

namespace py = pybind11;
using namespace maxsym;

namespace {

using Coords = std::vector<std::vector<Residue>>;

/// Holds the Lie data and the context together so Python owns one object.
class PyGamma {
 public:
  PyGamma(std::size_t d, std::uint32_t p, std::size_t n) : ctx_(GammaContext::create(d, p, n)) {}

  Coords identity() const { return ctx_.identity().coords; }
  Coords generator(std::size_t i) const { return ctx_.generator(i).coords; }
  Coords random(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    return ctx_.random(rng).coords;
  }
  Coords multiply(const Coords& a, const Coords& b) const {
    return maxsym::multiply(ctx_.make(a), ctx_.make(b), ctx_).coords;
  }
  Coords inverse(const Coords& a) const { return maxsym::inverse(ctx_.make(a), ctx_).coords; }
  Coords power(const Coords& a, std::int64_t k) const { return maxsym::power(ctx_.make(a), k, ctx_).coords; }
  Coords commutator(const std::vector<Coords>& xs) const {
    std::vector<GammaElement> elems;
    for (const auto& x : xs) elems.push_back(ctx_.make(x));
    return maxsym::commutator(elems, ctx_).coords;
  }
  std::size_t order_exponent() const { return group_order_exponent(ctx_); }
  std::size_t nilpotency_class(std::uint64_t seed) const { return maxsym::nilpotency_class(ctx_, seed).nilpotency_class; }
  py::dict verify(std::size_t trials, std::uint64_t seed) const {
    const auto rep = verify_group_laws(ctx_, trials, seed);
    py::dict out;
    for (const auto& c : rep.checks) out[py::str(c.name)] = py::make_tuple(c.checked, c.failures);
    out["pass"] = rep.all_pass();
    return out;
  }
  std::size_t d() const { return ctx_.d(); }
  std::uint32_t p() const { return ctx_.p(); }
  std::size_t n() const { return ctx_.n(); }

 private:
  GammaContext ctx_;
};

py::dict decompose(const std::string& cls, const std::vector<std::string>& params, std::size_t d, std::uint32_t p,
                   std::size_t power, std::size_t exhaustive_bound, std::uint64_t seed) {
  const auto set = build_generators(SubgroupSpec::parse(cls, params), d, p);
  const LieAlgebra lie(d, p, power);
  SearchOptions opts;
  opts.exhaustive_bound = exhaustive_bound;
  opts.seed = seed;
  const auto action = lie_power_action(set.gens, lie, power);
  const auto mins = minimal_submodules(action, opts);
  const auto maxs = maximal_submodules(action, opts);
  std::vector<std::size_t> min_dims, max_codims;
  for (const auto& m : mins.modules) min_dims.push_back(m.dim());
  for (const auto& m : maxs.modules) max_codims.push_back(m.codim());
  py::dict out;
  out["dim"] = action.dim;
  out["minimal_dims"] = min_dims;
  out["maximal_codims"] = max_codims;
  out["smallest_quotient"] = smallest_quotient_dim(action, opts).dim;
  out["strategy"] = mins.strategy;
  out["complete"] = mins.complete && maxs.complete;
  return out;
}

std::string construct(const std::string& cls, const std::vector<std::string>& params, std::size_t d,
                      std::uint32_t p, std::uint64_t seed) {
  PipelineOptions opts;
  opts.seed = seed;
  opts.search.seed = seed;
  return report_to_json(construct_group(SubgroupSpec::parse(cls, params), d, p, opts));
}

py::list table2(std::uint32_t p, std::size_t d_max, unsigned threads) {
  py::list out;
  std::vector<Table2Row> rows;
  {
    py::gil_scoped_release release;
    rows = run_table2(p, d_max, {}, threads);
  }
  for (const auto& r : rows) {
    py::dict row;
    row["label"] = r.instance.spec.label();
    row["d"] = r.instance.d;
    row["n"] = r.n;
    row["expected_n"] = r.expected.n;
    row["expected"] = r.expected.values;
    row["computed"] = r.top_dim;
    row["relation"] = to_string(r.match);
    row["m"] = r.order_exponent;
    row["verified"] = r.verified;
    row["error"] = r.error;
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exponent-p groups from maximal subgroups of GL(d, p)";

  m.def("witt_dims", &witt_dims, py::arg("d"), py::arg("k"), py::arg("p"));

  py::class_<PyGamma>(m, "GammaGroup")
      .def(py::init<std::size_t, std::uint32_t, std::size_t>(), py::arg("d"), py::arg("p"), py::arg("n"))
      .def_property_readonly("d", &PyGamma::d)
      .def_property_readonly("p", &PyGamma::p)
      .def_property_readonly("n", &PyGamma::n)
      .def("identity", &PyGamma::identity)
      .def("generator", &PyGamma::generator, py::arg("i"))
      .def("random", &PyGamma::random, py::arg("seed"))
      .def("multiply", &PyGamma::multiply)
      .def("inverse", &PyGamma::inverse)
      .def("power", &PyGamma::power)
      .def("commutator", &PyGamma::commutator)
      .def("order_exponent", &PyGamma::order_exponent)
      .def("nilpotency_class", &PyGamma::nilpotency_class, py::arg("seed") = 1)
      .def("verify", &PyGamma::verify, py::arg("trials") = 100, py::arg("seed") = 1);

  m.def("decompose", &decompose, py::arg("cls"), py::arg("params"), py::arg("d"), py::arg("p"), py::arg("power"),
        py::arg("exhaustive_bound") = 6, py::arg("seed") = 1);
  m.def("construct_json", &construct, py::arg("cls"), py::arg("params"), py::arg("d"), py::arg("p"),
        py::arg("seed") = 1);
  m.def("table2", &table2, py::arg("p"), py::arg("d_max"), py::arg("threads") = 1);
}

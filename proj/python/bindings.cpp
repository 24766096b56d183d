#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "pfrkit/commands.hpp"
#include "pfrkit/error.hpp"
#include "pfrkit/extract.hpp"
#include "pfrkit/generators.hpp"
#include "pfrkit/gf2core.hpp"
#include "pfrkit/setfile.hpp"
#include "pfrkit/span.hpp"
#include "pfrkit/stats.hpp"
#include "pfrkit/structured.hpp"
#include "pfrkit/version.hpp"

namespace py = pybind11;
using namespace pfrkit;

namespace {

using Elements = std::vector<std::uint64_t>;

F2Set make_set(int dim, const Elements& elems) { return F2Set(dim, elems); }

Elements elements_of(const F2Set& s) { return {s.begin(), s.end()}; }

std::string dump(const Json& j) { return j.dump(); }

Rational rational_arg(const std::string& text) { return parse_rational(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact additive combinatorics over F_2^n";
  m.attr("__version__") = kVersion;

  // Translators run most recent first, so the base class goes first.
  auto& base = py::register_exception<Error>(m, "Error", PyExc_Exception);
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
  py::register_exception<EmptyInput>(m, "EmptyInput", base.ptr());
  py::register_exception<OutOfRange>(m, "OutOfRange", base.ptr());
  py::register_exception<CapExceeded>(m, "CapExceeded", base.ptr());
  py::register_exception<HypothesisError>(m, "HypothesisError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def("parse_set", [](const std::string& text) {
    const F2Set s = parse_set_text(text);
    return py::make_tuple(s.dim(), elements_of(s));
  });
  m.def("format_set", [](int dim, const Elements& a) { return format_set_text(make_set(dim, a)); });

  m.def("sumset", [](int dim, const Elements& a, const Elements& b) {
    return elements_of(sumset(make_set(dim, a), make_set(dim, b)));
  });
  m.def("symmetry_set", [](int dim, const Elements& a, std::uint64_t s) {
    return elements_of(symmetry_set(make_set(dim, a), F2Vector(s, dim)));
  });
  m.def("doubling", [](int dim, const Elements& a) { return to_string(doubling(make_set(dim, a))); });
  m.def("span_rank", [](int dim, const Elements& a) { return span_basis(make_set(dim, a)).rank(); });
  m.def("profile", [](int dim, const Elements& a, const std::string& method) {
    const SymmetryProfile p = symmetry_profile(make_set(dim, a), parse_profile_method(method));
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& f : p.fibers()) out.emplace_back(f.sum, f.count);
    return out;
  });

  m.def("expectation_z", [](int dim, const Elements& a, const std::string& method) {
    return to_string(expectation_z(symmetry_profile(make_set(dim, a)), parse_moment_method(method)));
  });
  m.def("expectation_y2", [](int dim, const Elements& a, const std::string& method) {
    return to_string(expectation_y2(symmetry_profile(make_set(dim, a)), parse_moment_method(method)));
  });
  m.def("moments", [](int dim, const Elements& a, std::optional<std::string> L) {
    std::optional<Rational> l;
    if (L) l = rational_arg(*L);
    return dump(to_json(pr_z_positive(symmetry_profile(make_set(dim, a)), l)));
  });
  m.def("large_fiber_probability", [](int dim, const Elements& a, const std::string& L) {
    return to_string(large_fiber_probability(symmetry_profile(make_set(dim, a)), rational_arg(L)));
  });
  m.def("bijection_check", [](int dim, const Elements& a, std::uint64_t a1, std::uint64_t a2) {
    return dump(to_json(lemma4_bijection_check(make_set(dim, a), F2Vector(a1, dim), F2Vector(a2, dim))));
  });
  m.def("freiman_ruzsa_check",
        [](int dim, const Elements& a) { return dump(to_json(freiman_ruzsa_check(make_set(dim, a)))); });

  m.def("unstructured", [](int dim, const Elements& a, const std::string& L, bool force,
                           std::optional<std::string> energy_floor, unsigned threads) {
    UnstructuredOptions opts;
    opts.force = force;
    opts.threads = threads;
    if (energy_floor) opts.energy_floor = rational_arg(*energy_floor);
    py::gil_scoped_release release;
    return dump(to_json(unstructured_pipeline(make_set(dim, a), rational_arg(L), opts)));
  });
  m.def("structured", [](int dim, const Elements& a, std::optional<std::uint64_t> a_star,
                         const std::string& eps, const std::string& L, bool force, unsigned threads) {
    const F2Set set = make_set(dim, a);
    const Rational l = rational_arg(L);
    StructuredOptions opts;
    opts.force = force;
    opts.threads = threads;
    std::uint64_t chosen = 0;
    Json scan = nullptr;
    if (a_star) {
      chosen = *a_star;
    } else {
      const AStarScan found = scan_astar(symmetry_profile(set), l);
      chosen = found.a_star;
      scan = to_json(found, dim);
    }
    ExtractionReport report = structured_pipeline(set, F2Vector(chosen, dim), rational_arg(eps), l, opts);
    if (!a_star) report.witnesses["astar_scan"] = scan;
    return dump(to_json(report));
  });

  m.def("generate", [](const std::string& family, int n, int t, int d, const std::string& density,
                       std::uint64_t k, std::uint64_t m_size, bool same_coset,
                       std::optional<std::uint64_t> seed) {
    GeneratorSpec spec;
    spec.family = family;
    spec.n = n;
    spec.t = t;
    spec.d = d;
    spec.density = rational_arg(density);
    spec.k = k;
    spec.m = m_size;
    spec.same_coset = same_coset;
    spec.seed = seed;
    const F2Set s = generate(spec);
    return py::make_tuple(s.dim(), elements_of(s));
  });

  m.def("analyze", [](int dim, const Elements& a, const std::string& method) {
    return dump(analyze_command(make_set(dim, a), parse_profile_method(method), 1).result);
  });
  m.def("verify", [](int dim, const Elements& a, std::vector<std::string> checks, const std::string& L,
                     std::optional<std::string> eps) {
    VerifyOptions opts;
    opts.checks = std::move(checks);
    opts.L = rational_arg(L);
    if (eps) opts.eps = rational_arg(*eps);
    const CommandOutcome out = verify_command(make_set(dim, a), opts);
    return py::make_tuple(out.exit_code, dump(out.result));
  });
}

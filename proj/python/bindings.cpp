#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "chaoskit/chaos.hpp"
#include "chaoskit/cli.hpp"
#include "chaoskit/hermite.hpp"
#include "chaoskit/measures.hpp"
#include "chaoskit/quadrature.hpp"
#include "chaoskit/series.hpp"
#include "chaoskit/widder.hpp"

namespace py = pybind11;
using namespace chaoskit;

namespace {

py::dict report_dict(const CheckReport& r) {
    py::list records;
    for (const auto& rec : r.records) {
        py::dict d;
        d["check"] = rec.name;
        d["status"] = std::string(to_string(rec.status));
        d["left"] = rec.left;
        d["relation"] = rec.relation;
        d["right"] = rec.right;
        d["std_error"] = rec.std_error ? py::object(py::float_(*rec.std_error)) : py::object(py::none());
        py::dict inputs;
        for (const auto& [k, v] : rec.inputs) inputs[py::str(k)] = v;
        d["inputs"] = inputs;
        d["note"] = rec.note;
        records.append(d);
    }
    py::dict out;
    out["name"] = r.name;
    out["passed"] = r.passed();
    out["records"] = records;
    return out;
}

py::dict norm_dict(const NormResult& n) {
    py::dict d;
    d["value"] = n.value;
    d["relative_change"] = n.relative_change;
    d["converged"] = n.converged;
    d["method"] = n.method;
    return d;
}

}  // namespace

PYBIND11_MODULE(_chaoskit, m) {
    m.doc() = "Heat-Hermite polynomials, Wiener chaos norms and Widder martingales";

    m.def("hermite_1d", &hermite_1d, py::arg("n"), py::arg("t"), py::arg("x"), "H_n(t, x)");
    m.def(
        "hermite_multi",
        [](std::vector<unsigned> alpha, double t, std::vector<double> x) { return hermite_multi(MultiIndex(alpha), t, x); },
        py::arg("alpha"), py::arg("t"), py::arg("x"));
    m.def(
        "complex_power_expectation",
        [](std::vector<unsigned> alpha, double t, std::vector<double> x) {
            return complex_power_expectation(MultiIndex(alpha), t, x);
        },
        py::arg("alpha"), py::arg("t"), py::arg("x"), "E[(x + iY)^alpha] with Y ~ N(0, t I)");
    m.def(
        "gauss_hermite",
        [](std::size_t n) {
            const auto& r = gauss_hermite(n);
            return std::make_pair(r.nodes, r.weights);
        },
        py::arg("n"), "nodes and weights for the standard normal weight");

    py::class_<SignedAtomicMeasure>(m, "Measure")
        .def(py::init([](std::vector<std::pair<double, std::vector<double>>> atoms) {
                 std::vector<Atom> a;
                 for (auto& [w, v] : atoms) a.push_back({std::move(v), w});
                 return SignedAtomicMeasure(std::move(a));
             }),
             py::arg("atoms"), "from a list of (weight, location) pairs")
        .def_property_readonly("dim", &SignedAtomicMeasure::dim)
        .def_property_readonly("atoms",
                               [](const SignedAtomicMeasure& mu) {
                                   std::vector<std::pair<double, std::vector<double>>> out;
                                   for (const auto& a : mu.atoms()) out.emplace_back(a.weight, a.location);
                                   return out;
                               })
        .def("is_positive", &SignedAtomicMeasure::is_positive)
        .def("total_variation", [](const SignedAtomicMeasure& mu) { return total_variation(mu); })
        .def("moment", [](const SignedAtomicMeasure& mu, std::vector<unsigned> a) { return moment(mu, MultiIndex(a)); })
        .def("__len__", &SignedAtomicMeasure::size);
    m.def("random_measure", &random_measure, py::arg("seed"), py::arg("dim"), py::arg("max_atoms"), py::arg("radius"),
          py::arg("signed_weights") = false);

    py::class_<HermiteSeries>(m, "HermiteSeries")
        .def(py::init<double, std::size_t>(), py::arg("t"), py::arg("d"))
        .def("set", [](HermiteSeries& h, std::vector<unsigned> a, double b) { h.set(MultiIndex(a), b); })
        .def("coefficient", [](const HermiteSeries& h, std::vector<unsigned> a) { return h.coefficient(MultiIndex(a)); })
        .def("terms",
             [](const HermiteSeries& h) {
                 py::dict d;
                 for (const auto& [a, b] : h.terms()) {
                     std::vector<unsigned> c(a.components().begin(), a.components().end());
                     d[py::tuple(py::cast(c))] = b;
                 }
                 return d;
             })
        .def("evaluate", [](const HermiteSeries& h, std::vector<double> x) { return h.evaluate(x); })
        .def("l2_norm_squared", &HermiteSeries::l2_norm_squared)
        .def_property_readonly("t", &HermiteSeries::time)
        .def_property_readonly("d", &HermiteSeries::dim)
        .def_property_readonly("max_degree", &HermiteSeries::max_degree);

    m.def(
        "lp_norm", [](const HermiteSeries& h, double p, std::size_t nodes) { return norm_dict(lp_norm_hermite_functional(h, p, nodes)); },
        py::arg("series"), py::arg("p"), py::arg("nodes") = 0);
    m.def("ou_apply", &ou_apply, py::arg("series"), py::arg("s"));
    m.def("chaos_project", &chaos_project, py::arg("series"), py::arg("n"));
    m.def("random_series", &random_series, py::arg("seed"), py::arg("t"), py::arg("d"), py::arg("max_degree"),
          py::arg("terms"));
    m.def(
        "check_hypercontractivity",
        [](const HermiteSeries& h, double p, double q, double s) { return report_dict(check_hypercontractivity(h, p, q, s)); },
        py::arg("series"), py::arg("p"), py::arg("q"), py::arg("s"));
    m.def(
        "check_chaos_norm_lemmas",
        [](const HermiteSeries& h, double p, double q) { return report_dict(check_chaos_norm_lemmas(h, p, q)); },
        py::arg("series"), py::arg("p"), py::arg("q"));

    m.def(
        "widder_martingale",
        [](const SignedAtomicMeasure& mu, double t, std::vector<double> x) { return widder_martingale(mu, t, x); },
        py::arg("mu"), py::arg("t"), py::arg("x"));
    m.def(
        "widder_l1_norm", [](const SignedAtomicMeasure& mu, double t) { return norm_dict(widder_l1_norm(mu, t)); },
        py::arg("mu"), py::arg("t"));
    m.def("pollard_closed_form", &pollard_closed_form, py::arg("t"), py::arg("x"));
    m.def("pollard_l1_term", &pollard_l1_term, py::arg("t"), py::arg("k"));
    m.def("coefficients_from_measure", &coefficients_from_measure, py::arg("mu"), py::arg("cutoff"), py::arg("t") = 1.0);
    m.def(
        "recover_measure_cf",
        [](const SignedAtomicMeasure& mu, double t, std::vector<double> u) {
            return recover_measure_cf(widder_martingale_spec(mu, 2.0), t, u).value;
        },
        py::arg("mu"), py::arg("t"), py::arg("u"), "Fourier transform of a positive measure from its martingale");
    m.def(
        "check_l1_norm_identity",
        [](const SignedAtomicMeasure& mu, std::vector<double> ts, double terminal) {
            return report_dict(check_l1_norm_identity(mu, ts, terminal));
        },
        py::arg("mu"), py::arg("t_grid"), py::arg("terminal_tolerance") = 1e-6);
    m.def(
        "check_pollard_divergence", [](double t, unsigned lo, unsigned hi) { return report_dict(check_pollard_divergence(t, lo, hi)); },
        py::arg("t") = 8.0, py::arg("k_lo") = 5, py::arg("k_hi") = 30);

    m.def(
        "run",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "chaoskit");
            std::vector<const char*> argv;
            for (const auto& a : args) argv.push_back(a.c_str());
            std::ostringstream out, err;
            int status;
            {
                py::gil_scoped_release release;
                status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            }
            return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "the command line runner; returns (exit status, stdout, stderr)");
    m.attr("SCHEMA_VERSION") = cli::kSchemaVersion;
}

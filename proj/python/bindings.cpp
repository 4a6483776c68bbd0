#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twistlab/engine.hpp"

namespace py = pybind11;
using namespace twistlab;

namespace {

Integer to_integer(const py::int_& n) {
    return Integer(py::str(n).cast<std::string>());
}

py::int_ to_py(const Integer& n) {
    return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(n.get_str().c_str(), nullptr, 10)));
}

Place to_place(const py::object& v) {
    if (py::isinstance<py::str>(v)) {
        const auto s = v.cast<std::string>();
        if (s == "inf" || s == "real") return Place::real();
        throw py::value_error("place must be 'inf' or a prime");
    }
    return Place::finite(to_integer(v.cast<py::int_>()));
}

}  // namespace

PYBIND11_MODULE(_twistlab, m) {
    m.doc() = "Quadratic twists and 2-Selmer parity over Q";
    m.attr("engine_version") = kEngineVersion;

    py::register_exception<Error>(m, "TwistlabError", PyExc_ValueError);

    m.def(
        "run_json",
        [](const std::string& command, const std::string& inputs) {
            Json in = Json::parse(inputs);
            CommandResult r;
            {
                py::gil_scoped_release release;
                r = run_command(command, in);
            }
            return py::make_tuple(r.output.dump(), r.unsupported);
        },
        py::arg("command"), py::arg("inputs"),
        "Run an engine command on JSON text; returns (output JSON text, unsupported flag).");

    m.def(
        "kronecker", [](const py::int_& a, const py::int_& n) { return kronecker(to_integer(a), to_integer(n)); },
        py::arg("a"), py::arg("n"));
    m.def(
        "hilbert",
        [](const py::int_& a, const py::int_& b, const py::object& v) {
            return hilbert(Rational(to_integer(a)), Rational(to_integer(b)), to_place(v));
        },
        py::arg("a"), py::arg("b"), py::arg("place"));
    m.def(
        "factor",
        [](const py::int_& n) {
            const Factorization f = factor(to_integer(n));
            py::list out;
            for (const auto& pp : f.factors) out.append(py::make_tuple(to_py(pp.prime), pp.exponent));
            return py::make_tuple(f.sign, out);
        },
        py::arg("n"), "Returns (sign, [(prime, exponent), ...]).");
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "flagopp/constructions.hpp"
#include "flagopp/errors.hpp"
#include "flagopp/klein.hpp"
#include "flagopp/projective.hpp"
#include "flagopp/quadrangle.hpp"
#include "flagopp/reporting.hpp"
#include "flagopp/solvers.hpp"

namespace py = pybind11;
using namespace flagopp;

namespace {

PgElement pg_element(const std::string& kind) {
    if (kind == "point") return PgElement::point;
    if (kind == "plane") return PgElement::plane;
    throw Error("element kind must be 'point' or 'plane', got '" + kind + "'");
}

GqElement gq_element(const std::string& kind) {
    if (kind == "point") return GqElement::point;
    if (kind == "line") return GqElement::line;
    throw Error("element kind must be 'point' or 'line', got '" + kind + "'");
}

std::string feasibility_str(Feasibility f) {
    switch (f) {
        case Feasibility::yes: return "yes";
        case Feasibility::no: return "no";
        default: return "unknown";
    }
}

py::object reports_to_py(const std::vector<Report>& reports) {
    auto loads = py::module_::import("json").attr("loads");
    py::list out;
    for (const auto& r : reports) out.append(loads(r.to_json().dump()));
    return out;
}

VerifyOptions make_options(int threads, long timeout_s, std::optional<int> min_size,
                           bool enumerate, const std::string& out_dir) {
    VerifyOptions opts;
    opts.threads = threads;
    opts.timeout_s = timeout_s;
    opts.min_size = min_size;
    opts.enumerate = enumerate;
    opts.out_dir = out_dir;
    return opts;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "chamber/flag opposition graphs of PG(3,q) and generalized quadrangles";

    py::register_exception<NotPrimePowerError>(m, "NotPrimePowerError");
    py::register_exception<UnsupportedError>(m, "UnsupportedError");
    py::register_exception<DivisionByZeroError>(m, "DivisionByZeroError");
    py::register_exception<NotGQError>(m, "NotGQError");
    py::register_exception<InvalidGridError>(m, "InvalidGridError");
    py::register_exception<ConstructionFailedError>(m, "ConstructionFailedError");
    py::register_exception<NotPartitionError>(m, "NotPartitionError");
    py::register_exception<NotLineIndependentError>(m, "NotLineIndependentError");
    py::register_exception<FingerprintMismatchError>(m, "FingerprintMismatchError");

    py::class_<Field>(m, "Field")
        .def(py::init<int>(), py::arg("q"))
        .def_property_readonly("q", &Field::q)
        .def_property_readonly("p", &Field::p)
        .def_property_readonly("e", &Field::e)
        .def_property_readonly("modulus", &Field::modulus)
        .def("add", [](const Field& f, int a, int b) { return int(f.add(FieldElement(a), FieldElement(b))); })
        .def("sub", [](const Field& f, int a, int b) { return int(f.sub(FieldElement(a), FieldElement(b))); })
        .def("mul", [](const Field& f, int a, int b) { return int(f.mul(FieldElement(a), FieldElement(b))); })
        .def("neg", [](const Field& f, int a) { return int(f.neg(FieldElement(a))); })
        .def("inv", [](const Field& f, int a) { return int(f.inv(FieldElement(a))); })
        .def("pow", [](const Field& f, int a, long n) { return int(f.pow(FieldElement(a), n)); });

    py::class_<OppositionGraph>(m, "Graph")
        .def("__len__", &OppositionGraph::size)
        .def("degree", &OppositionGraph::degree, py::arg("v"))
        .def("adjacent", &OppositionGraph::adjacent, py::arg("u"), py::arg("v"))
        .def("edge_count", &OppositionGraph::edge_count)
        .def_property_readonly("fingerprint", &OppositionGraph::fingerprint)
        .def_property_readonly("labels", &OppositionGraph::labels)
        .def("dimacs", &OppositionGraph::dimacs)
        .def("neighbors",
             [](const OppositionGraph& g, std::size_t v) { return g.row(v).to_indices(); });

    py::class_<Certificate>(m, "Certificate")
        .def_property_readonly("kind", [](const Certificate& c) { return to_string(c.kind); })
        .def_readonly("vertex_sets", &Certificate::vertex_sets)
        .def_readonly("provenance", &Certificate::provenance)
        .def_readonly("graph_fingerprint", &Certificate::graph_fingerprint)
        .def("set", &Certificate::set)
        .def("to_json", &Certificate::to_json)
        .def_static("from_json", &Certificate::from_json, py::arg("text"))
        .def("save", &Certificate::save, py::arg("path"))
        .def_static("load", &Certificate::load, py::arg("path"));

    py::class_<Chamber>(m, "Chamber")
        .def_readonly("point_id", &Chamber::point_id)
        .def_readonly("line_id", &Chamber::line_id)
        .def_readonly("plane_id", &Chamber::plane_id);

    py::class_<Flag>(m, "Flag")
        .def_readonly("point_id", &Flag::point_id)
        .def_readonly("line_id", &Flag::line_id);

    py::class_<Grid>(m, "Grid")
        .def_readonly("points", &Grid::points)
        .def_readonly("lines", &Grid::lines);

    py::class_<PgContext>(m, "PgContext")
        .def(py::init<int, int, bool>(), py::arg("q"), py::arg("threads") = 1,
             py::arg("force") = false,
             py::call_guard<py::gil_scoped_release>())
        .def_property_readonly("q", [](const PgContext& c) { return c.geometry.q(); })
        .def_readonly("chambers", &PgContext::chambers)
        .def_readonly("graph", &PgContext::graph)
        .def("vertex_of", &PgContext::vertex_of, py::arg("point_id"), py::arg("line_id"),
             py::arg("plane_id"))
        .def("point_count", [](const PgContext& c) { return c.geometry.points().size(); })
        .def("line_count", [](const PgContext& c) { return c.geometry.lines().size(); })
        .def("plane_count", [](const PgContext& c) { return c.geometry.planes().size(); });

    py::class_<GqContext>(m, "GqContext")
        .def_static("w", &GqContext::w, py::arg("q"), py::arg("threads") = 1,
                    py::call_guard<py::gil_scoped_release>())
        .def_static("q4", &GqContext::q4, py::arg("q"), py::arg("threads") = 1,
                    py::call_guard<py::gil_scoped_release>())
        .def_static("h4", &GqContext::h4, py::arg("threads") = 1,
                    py::call_guard<py::gil_scoped_release>())
        .def_static(
            "from_lines",
            [](int n_points, std::vector<std::vector<int>> lines, int threads) {
                return GqContext::from_incidence(gq_verify(n_points, std::move(lines)), threads);
            },
            py::arg("n_points"), py::arg("lines"), py::arg("threads") = 1)
        .def_readonly("model", &GqContext::model)
        .def_readonly("q", &GqContext::q)
        .def_readonly("flags", &GqContext::flags)
        .def_readonly("graph", &GqContext::graph)
        .def_property_readonly("s", [](const GqContext& c) { return c.gq.s; })
        .def_property_readonly("t", [](const GqContext& c) { return c.gq.t; })
        .def_property_readonly("n_points", [](const GqContext& c) { return c.gq.n_points; })
        .def_property_readonly("n_lines", [](const GqContext& c) { return c.gq.lines.size(); })
        .def_property_readonly("lines", [](const GqContext& c) { return c.gq.lines; })
        .def("vertex_of", &GqContext::vertex_of, py::arg("point_id"), py::arg("line_id"));

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("objective", &SolveResult::objective)
        .def_readonly("optimal", &SolveResult::optimal)
        .def_readonly("lower_bound", &SolveResult::lower_bound)
        .def_readonly("upper_bound", &SolveResult::upper_bound)
        .def_readonly("lower_bound_reason", &SolveResult::lower_bound_reason)
        .def_readonly("nodes", &SolveResult::nodes)
        .def_readonly("runtime_ms", &SolveResult::runtime_ms)
        .def_property_readonly("witness", [](const SolveResult& r) {
            return r.witness ? py::cast(*r.witness) : py::none().cast<py::object>();
        });

    py::class_<EnumerateResult>(m, "EnumerateResult")
        .def_readonly("sets", &EnumerateResult::sets)
        .def_readonly("complete", &EnumerateResult::complete)
        .def_readonly("nodes", &EnumerateResult::nodes)
        .def_readonly("runtime_ms", &EnumerateResult::runtime_ms);

    py::class_<ColorableResult>(m, "ColorableResult")
        .def_property_readonly("feasible",
                               [](const ColorableResult& r) { return feasibility_str(r.feasible); })
        .def_readonly("nodes", &ColorableResult::nodes)
        .def_readonly("runtime_ms", &ColorableResult::runtime_ms)
        .def_property_readonly("coloring", [](const ColorableResult& r) {
            return r.coloring ? py::cast(*r.coloring) : py::none().cast<py::object>();
        });

    m.def(
        "max_independent_set",
        [](const OppositionGraph& g, std::optional<std::vector<int>> hint, long timeout_ms) {
            return max_independent_set(g, std::move(hint), Millis(timeout_ms));
        },
        py::arg("graph"), py::arg("hint") = py::none(), py::arg("timeout_ms") = 300000,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "enumerate_maximal_is",
        [](const OppositionGraph& g, std::size_t min_size, long timeout_ms) {
            return enumerate_maximal_is(g, min_size, Millis(timeout_ms));
        },
        py::arg("graph"), py::arg("min_size"), py::arg("timeout_ms") = 300000,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "k_colorable",
        [](const OppositionGraph& g, int k, long timeout_ms) {
            return k_colorable(g, k, Millis(timeout_ms));
        },
        py::arg("graph"), py::arg("k"), py::arg("timeout_ms") = 300000,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "chromatic_number",
        [](const OppositionGraph& g, std::optional<Certificate> ub_hint,
           std::optional<std::pair<long, std::string>> lb_hint, long timeout_ms) {
            return chromatic_number(g, std::move(ub_hint), std::move(lb_hint),
                                    Millis(timeout_ms));
        },
        py::arg("graph"), py::arg("ub_hint") = py::none(), py::arg("lb_hint") = py::none(),
        py::arg("timeout_ms") = 300000, py::call_guard<py::gil_scoped_release>());
    m.def("greedy_clique_cover", &greedy_clique_cover, py::arg("graph"));
    m.def(
        "verify_certificate",
        [](const OppositionGraph& g, const Certificate& c) {
            auto r = verify_certificate(g, c);
            return py::make_tuple(r.ok, r.violation);
        },
        py::arg("graph"), py::arg("certificate"));
    m.def("is_maximal_independent", &is_maximal_independent, py::arg("graph"), py::arg("set"));

    m.def(
        "pencil_pg",
        [](const std::string& kind, int id, const PgContext& ctx) {
            return pencil_pg(pg_element(kind), id, ctx);
        },
        py::arg("kind"), py::arg("id"), py::arg("ctx"));
    m.def(
        "pencil_gq",
        [](const std::string& kind, int id, const GqContext& ctx) {
            return pencil_gq(gq_element(kind), id, ctx);
        },
        py::arg("kind"), py::arg("id"), py::arg("ctx"));
    m.def("pg_covering_family", &pg_covering_family, py::arg("line_id"), py::arg("plane_id"),
          py::arg("ctx"));
    m.def("pg_coloring", &pg_coloring, py::arg("line_id"), py::arg("plane_id"), py::arg("ctx"));
    m.def(
        "grids_by_hyperplane",
        [](const GqContext& ctx) {
            if (!ctx.ambient) throw UnsupportedError("context has no ambient geometry");
            return grids_by_hyperplane(ctx.gq, *ctx.ambient, ctx.emb);
        },
        py::arg("ctx"));
    m.def(
        "grids_by_subset_closure",
        [](const GqContext& ctx) { return grids_by_subset_closure(ctx.gq); }, py::arg("ctx"));
    m.def("exceptional_gq22", &exceptional_gq22, py::arg("grid"), py::arg("ctx"));
    m.def("sharpness_set", &sharpness_set, py::arg("ctx"), py::arg("grid"),
          py::arg("grid_point"));
    m.def("ovoid_q4", &ovoid_q4, py::arg("ctx"));
    m.def("spread_w", &spread_w, py::arg("w_ctx"), py::arg("q4_ctx"), py::arg("ovoid_points"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "coloring_from_ovoid_or_spread",
        [](const GqContext& ctx, const std::string& kind, const std::vector<int>& elements) {
            return coloring_from_ovoid_or_spread(ctx, gq_element(kind), elements);
        },
        py::arg("ctx"), py::arg("kind"), py::arg("elements"));
    m.def("h44_cover", &h44_cover, py::arg("point_id"), py::arg("ctx"));
    m.def("line_classes_from_cover", &line_classes_from_cover, py::arg("line_id"),
          py::arg("plane_id"), py::arg("ctx"));
    m.def("lift_line_coloring", &lift_line_coloring, py::arg("line_classes"), py::arg("ctx"));

    m.def(
        "klein_check",
        [](const PgContext& ctx) {
            KleinMap klein(ctx.geometry);
            auto rep = klein.opposition_transfer_check(ctx);
            bool pencils = klein.pencil_translation_check(ctx);
            py::dict d;
            d["transfer_pass"] = rep.pass;
            d["pairs_checked"] = rep.pairs_checked;
            d["pencil_translation_pass"] = pencils;
            d["quadric_planes"] = klein.quadric_plane_count();
            return d;
        },
        py::arg("ctx"));

    m.def(
        "verify_gq",
        [](GqContext& ctx, int threads, long timeout_s, std::optional<int> min_size,
           bool enumerate, const std::string& out_dir) {
            auto reports =
                run_verify_gq(ctx, make_options(threads, timeout_s, min_size, enumerate, out_dir));
            return reports_to_py(reports);
        },
        py::arg("ctx"), py::arg("threads") = 1, py::arg("timeout_s") = 300,
        py::arg("min_size") = py::none(), py::arg("enumerate") = true, py::arg("out_dir") = "");
    m.def(
        "verify_pg",
        [](int q, int threads, long timeout_s, bool enumerate, const std::string& out_dir) {
            auto reports =
                run_verify_pg(q, make_options(threads, timeout_s, std::nullopt, enumerate, out_dir));
            return reports_to_py(reports);
        },
        py::arg("q"), py::arg("threads") = 1, py::arg("timeout_s") = 300,
        py::arg("enumerate") = true, py::arg("out_dir") = "");

    m.def(
        "read_gq_file",
        [](const std::string& path) {
            std::ifstream is(path);
            if (!is) throw Error("cannot read " + path);
            auto [np, lines] = read_gq(is);
            return py::make_tuple(np, lines);
        },
        py::arg("path"));
    m.def(
        "write_gq_file",
        [](const std::string& path, const GqContext& ctx) {
            std::ofstream os(path);
            if (!os) throw Error("cannot write " + path);
            write_gq(os, ctx.gq);
        },
        py::arg("path"), py::arg("ctx"));
}

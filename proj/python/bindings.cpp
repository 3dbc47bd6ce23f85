// Python bindings for the main operations: meshes and refinement, benchmark
// problems, assemble/solve/estimate, adaptive loops, and convergence studies.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lsfem/adapt.hpp"
#include "lsfem/assembly.hpp"
#include "lsfem/estimate.hpp"
#include "lsfem/study.hpp"

namespace py = pybind11;
using namespace lsfem;

namespace {

py::dict record_to_dict(const RunRecord& rec) {
    py::dict d;
    d["level"] = rec.level;
    d["dofs"] = rec.dofs;
    d["nodes"] = rec.nodes;
    d["hmax"] = rec.h_max;
    d["ls"] = rec.errors.ls;
    d["eta"] = rec.errors.eta;
    d["l2u"] = rec.errors.l2_u;
    d["h1u"] = rec.errors.h1_u;
    d["l2sigma"] = rec.errors.l2_sigma;
    d["wbh2A"] = rec.errors.wbh2_A;
    d["wbh2"] = rec.errors.wbh2;
    return d;
}

py::list report_to_rows(const RunReport& report) {
    py::list rows;
    for (const RunRow& row : report.rows) {
        py::dict d = record_to_dict(row.record);
        d["rate_ls"] = row.rates.ls;
        d["rate_l2u"] = row.rates.l2u;
        d["rate_h1u"] = row.rates.h1u;
        d["rate_l2sigma"] = row.rates.l2sigma;
        d["rate_wbh2A"] = row.rates.wbh2A;
        d["rate_wbh2"] = row.rates.wbh2;
        rows.append(d);
    }
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Least-squares finite element methods for 2D elliptic equations in "
              "non-divergence form";

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("generation", [](const Mesh& mesh) { return mesh.generation; })
        .def("vertex_count", &Mesh::vertex_count)
        .def("triangle_count", &Mesh::triangle_count)
        .def("total_area", &Mesh::total_area)
        .def("element_diameter", &Mesh::element_diameter)
        .def("max_diameter", &Mesh::max_diameter)
        .def("vertices",
             [](const Mesh& mesh) {
                 py::list out;
                 for (const auto& v : mesh.vertices) out.append(py::make_tuple(v.x, v.y));
                 return out;
             })
        .def("triangles",
             [](const Mesh& mesh) {
                 py::list out;
                 for (const auto& t : mesh.triangles)
                     out.append(py::make_tuple(t.v[0], t.v[1], t.v[2]));
                 return out;
             })
        .def("is_conforming", [](const Mesh& mesh) { return is_conforming(mesh); });

    m.def("make_initial_mesh",
          [](const std::string& domain) { return make_initial_mesh(domain_from_string(domain)); },
          py::arg("domain"));
    m.def("uniform_refine", &uniform_refine, py::arg("mesh"));
    m.def("bisect", &bisect, py::arg("mesh"), py::arg("marked"));

    m.def("benchmark_names", [] { return benchmark_names(); });

    // Assemble, solve, and report the error norms and estimator on a
    // uniformly refined benchmark mesh.
    m.def(
        "solve_level",
        [](const std::string& bench, const std::string& formulation, int degree, int level) {
            const BenchmarkProblem problem = benchmark(bench);
            const Formulation f = formulation_from_string(formulation);
            Mesh mesh = make_initial_mesh(problem.domain);
            for (int i = 0; i < level; ++i) mesh = uniform_refine(mesh);
            const SparseSystem system = assemble(mesh, problem, f, degree);
            const SolutionPair solution = solve_ls(system);
            const ErrorReport rep = error_norms(mesh, problem, solution, f, degree);
            RunRecord rec;
            rec.level = level;
            rec.dofs = system.layout.free_count;
            rec.nodes = mesh.vertex_count();
            rec.h_max = mesh.max_diameter();
            rec.errors = rep;
            return record_to_dict(rec);
        },
        py::arg("benchmark"), py::arg("formulation"), py::arg("degree"), py::arg("level") = 2);

    m.def(
        "run_study",
        [](const std::string& bench, const std::string& formulation, int degree,
           const std::string& mode, int levels, double theta, long max_dofs,
           const std::string& out_csv, const std::string& out_svg, double tol,
           int direct_threshold) {
            RunConfig config;
            config.benchmark = bench;
            config.formulation = formulation_from_string(formulation);
            config.degree = degree;
            config.mode = mode_from_string(mode);
            config.levels = levels;
            config.theta = theta;
            config.max_dofs = max_dofs;
            config.out_csv = out_csv;
            config.out_svg = out_svg;
            config.solver.tol = tol;
            config.solver.direct_threshold = direct_threshold;
            return report_to_rows(run(config));
        },
        py::arg("benchmark"), py::arg("formulation") = "l2", py::arg("degree") = 1,
        py::arg("mode") = "uniform", py::arg("levels") = 6, py::arg("theta") = 0.5,
        py::arg("max_dofs") = 150000L, py::arg("out_csv") = std::string(),
        py::arg("out_svg") = std::string(), py::arg("tol") = 1e-10,
        py::arg("direct_threshold") = 20000);

    m.def(
        "fit_rate",
        [](const std::vector<double>& values, const std::vector<double>& scale,
           const std::string& mode, int window) {
            return fit_rate(values, scale, mode_from_string(mode), window);
        },
        py::arg("values"), py::arg("scale"), py::arg("mode") = "uniform", py::arg("window") = 3);
}

// Python bindings for the main operations: mesh construction, trajectory
// integration, convergence studies, snapshot export.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "chsav/assembly.hpp"
#include "chsav/harness.hpp"
#include "chsav/sav.hpp"
#include "chsav/snapshot.hpp"

namespace py = pybind11;
using namespace chsav;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

NodalFunction field_from_array(const Mesh& mesh, const py::array_t<double>& values) {
    const auto buf = values.request();
    if (buf.ndim != 1 || buf.shape[0] != mesh.node_count()) {
        throw std::invalid_argument("field must be a 1-D array with one value per mesh node");
    }
    const auto* data = static_cast<const double*>(buf.ptr);
    return NodalFunction(std::vector<double>(data, data + mesh.node_count()));
}

py::dict report_to_dict(const ConvergenceReport& report) {
    py::dict out;
    out["kind"] = report.kind == StudyKind::temporal ? "temporal" : "spatial";
    out["ladder"] = to_array(report.ladder);
    std::vector<double> e_phi, e_mu, e_r, r_phi, r_mu, r_r;
    for (const auto& rung : report.errors) {
        e_phi.push_back(rung.e_phi);
        e_mu.push_back(rung.e_mu);
        e_r.push_back(rung.e_r);
    }
    for (const auto& rate : report.rates) {
        r_phi.push_back(rate.phi);
        r_mu.push_back(rate.mu);
        r_r.push_back(rate.r);
    }
    out["e_phi"] = to_array(e_phi);
    out["e_mu"] = to_array(e_mu);
    out["e_r"] = to_array(e_r);
    out["rate_phi"] = to_array(r_phi);
    out["rate_mu"] = to_array(r_mu);
    out["rate_r"] = to_array(r_r);
    out["csv"] = report_csv(report);
    out["table"] = report_table(report);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Energy-stable SAV finite element solver for the Cahn-Hilliard equation";

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("resolution", &Mesh::resolution)
        .def_readonly("h", &Mesh::h)
        .def_property_readonly("node_count", &Mesh::node_count)
        .def_property_readonly("triangle_count", &Mesh::triangle_count)
        .def_property_readonly("nodes",
                               [](const Mesh& mesh) {
                                   py::array_t<double> out({mesh.node_count(), 2});
                                   auto* data = out.mutable_data();
                                   for (int i = 0; i < mesh.node_count(); ++i) {
                                       data[2 * i] = mesh.nodes[static_cast<std::size_t>(i)][0];
                                       data[2 * i + 1] = mesh.nodes[static_cast<std::size_t>(i)][1];
                                   }
                                   return out;
                               })
        .def_property_readonly("triangles", [](const Mesh& mesh) {
            py::array_t<int> out({mesh.triangle_count(), 3});
            auto* data = out.mutable_data();
            for (int e = 0; e < mesh.triangle_count(); ++e) {
                for (int k = 0; k < 3; ++k) {
                    data[3 * e + k] = mesh.triangles[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
                }
            }
            return out;
        });

    m.def("build_unit_square_mesh", &build_unit_square_mesh, py::arg("n"),
          "Uniform triangulation of the unit square with n cells per side.");

    m.def(
        "shifted_energy",
        [](const Mesh& mesh, const py::array_t<double>& phi, double epsilon, double C0) {
            return shifted_energy(mesh, field_from_array(mesh, phi),
                                  PotentialSpec{epsilon, C0, {}});
        },
        py::arg("mesh"), py::arg("phi"), py::arg("epsilon") = 0.1, py::arg("C0") = 1.0,
        "Integral of the double-well density plus the C0 shift.");

    m.def(
        "run_simulation",
        [](int n, double dt, double T, double epsilon, double C0, int record_every,
           const std::vector<double>& snapshot_times) {
            SchemeConfig config;
            config.n = n;
            config.dt = dt;
            config.T = T;
            config.potential = PotentialSpec{epsilon, C0, {}};
            config.record_every = record_every;
            const RunResult result = run(config, snapshot_times);

            std::vector<double> t, mass_series, e_orig, e_mod, r_series, grad_mu;
            for (const auto& rec : result.trace) {
                t.push_back(rec.t);
                mass_series.push_back(rec.mass);
                e_orig.push_back(rec.energy_original);
                e_mod.push_back(rec.energy_modified);
                r_series.push_back(rec.r);
                grad_mu.push_back(rec.grad_mu_sq);
            }
            py::dict out;
            out["t"] = to_array(t);
            out["mass"] = to_array(mass_series);
            out["energy_original"] = to_array(e_orig);
            out["energy_modified"] = to_array(e_mod);
            out["r"] = to_array(r_series);
            out["grad_mu_sq"] = to_array(grad_mu);
            out["phi_final"] = to_array(result.final_state.phi.values);
            out["mu_final"] = to_array(result.final_state.mu.values);
            py::list snaps;
            for (const auto& [time, phi] : result.snapshots) {
                snaps.append(py::make_tuple(time, to_array(phi.values)));
            }
            out["snapshots"] = snaps;
            out["steps"] = result.steps;
            out["factorize_count"] = result.factorize_count;
            out["block_solve_count"] = result.block_solve_count;
            out["first_nonpositive_r_step"] = result.first_nonpositive_r_step;
            return out;
        },
        py::arg("n") = 16, py::arg("dt") = 1e-3, py::arg("T") = 5.0, py::arg("epsilon") = 0.1,
        py::arg("C0") = 1.0, py::arg("record_every") = 1,
        py::arg("snapshot_times") = std::vector<double>{},
        "Integrate the scheme and return the diagnostics trace and final fields.");

    m.def(
        "temporal_study",
        [](int n, const std::vector<double>& dt_ladder, double dt_reference, double T,
           double epsilon, double C0) {
            return report_to_dict(
                temporal_study(n, dt_ladder, dt_reference, T, PotentialSpec{epsilon, C0, {}}));
        },
        py::arg("n") = 32, py::arg("dt_ladder") = std::vector<double>{1e-4, 5e-5, 2.5e-5, 1.25e-5},
        py::arg("dt_reference") = 3.125e-6, py::arg("T") = 0.01, py::arg("epsilon") = 0.1,
        py::arg("C0") = 1.0, "Time-step ladder against a fine-dt reference on one mesh.");

    m.def(
        "spatial_study",
        [](double dt, const std::vector<int>& n_ladder, int n_reference, double T, double epsilon,
           double C0) {
            return report_to_dict(
                spatial_study(dt, n_ladder, n_reference, T, PotentialSpec{epsilon, C0, {}}));
        },
        py::arg("dt") = 2e-5, py::arg("n_ladder") = std::vector<int>{4, 8, 16},
        py::arg("n_reference") = 64, py::arg("T") = 0.01, py::arg("epsilon") = 0.1,
        py::arg("C0") = 1.0, "Mesh ladder against a fine-mesh reference at a fixed time step.");

    m.def(
        "write_snapshot",
        [](const Mesh& mesh, const py::array_t<double>& phi, const std::string& path,
           const std::string& format) {
            SnapshotFormat fmt;
            if (format == "vtk") {
                fmt = SnapshotFormat::vtk;
            } else if (format == "csv") {
                fmt = SnapshotFormat::csv;
            } else {
                throw std::invalid_argument("format must be 'vtk' or 'csv'");
            }
            write_snapshot(mesh, field_from_array(mesh, phi), path, fmt);
        },
        py::arg("mesh"), py::arg("phi"), py::arg("path"), py::arg("format") = "vtk",
        "Write a nodal field as a legacy VTK unstructured grid or as x,y,phi CSV.");
}

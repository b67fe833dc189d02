#include "chsav/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chsav/linsolve.hpp"
#include "chsav/quadrature.hpp"

namespace chsav {

namespace {

// Shared sparsity: node pairs that share an element, columns sorted per row.
SparseOperator zero_operator_with_mesh_pattern(const Mesh& mesh) {
    const int n_nodes = mesh.node_count();
    std::vector<std::vector<int>> row_columns(static_cast<std::size_t>(n_nodes));
    for (const auto& tri : mesh.triangles) {
        for (int a : tri) {
            for (int b : tri) row_columns[static_cast<std::size_t>(a)].push_back(b);
        }
    }
    for (auto& row : row_columns) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return SparseOperator::from_row_pattern(n_nodes, n_nodes, row_columns);
}

void check_phi_size(const Mesh& mesh, const NodalFunction& phi, const char* where) {
    if (phi.size() != static_cast<std::size_t>(mesh.node_count())) {
        throw std::invalid_argument(std::string(where) + ": nodal function has " +
                                    std::to_string(phi.size()) + " values, mesh has " +
                                    std::to_string(mesh.node_count()) + " nodes");
    }
}

}  // namespace

SparseOperator assemble_mass(const Mesh& mesh) {
    SparseOperator m = zero_operator_with_mesh_pattern(mesh);
    // Exact P1 local mass: (area/12) * [[2,1,1],[1,2,1],[1,1,2]].
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const auto geom = element_geometry(mesh, e);
        const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
        const double off_diag = geom.area / 12.0;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m.at(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)]) +=
                    (i == j) ? 2.0 * off_diag : off_diag;
            }
        }
    }
    return m;
}

SparseOperator assemble_stiffness(const Mesh& mesh) {
    SparseOperator k = zero_operator_with_mesh_pattern(mesh);
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const auto geom = element_geometry(mesh, e);
        const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double gij = geom.basis_gradients[static_cast<std::size_t>(i)][0] *
                                       geom.basis_gradients[static_cast<std::size_t>(j)][0] +
                                   geom.basis_gradients[static_cast<std::size_t>(i)][1] *
                                       geom.basis_gradients[static_cast<std::size_t>(j)][1];
                k.at(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>(j)]) += geom.area * gij;
            }
        }
    }
    return k;
}

std::vector<double> assemble_weighted_load(const Mesh& mesh, const NodalFunction& phi,
                                           const PointwiseWeight& g) {
    check_phi_size(mesh, phi, "assemble_weighted_load");
    std::vector<double> load(static_cast<std::size_t>(mesh.node_count()), 0.0);
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
        const auto geom = element_geometry(mesh, e);
        const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
        const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
        const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
        const double v0 = phi[static_cast<std::size_t>(tri[0])];
        const double v1 = phi[static_cast<std::size_t>(tri[1])];
        const double v2 = phi[static_cast<std::size_t>(tri[2])];
        for (const auto& q : kTriQuadratureDegree4) {
            const double x = q.l0 * p0[0] + q.l1 * p1[0] + q.l2 * p2[0];
            const double y = q.l0 * p0[1] + q.l1 * p1[1] + q.l2 * p2[1];
            const double phi_q = q.l0 * v0 + q.l1 * v1 + q.l2 * v2;
            const double gq = g(x, y, phi_q);
            if (!std::isfinite(gq)) {
                throw std::runtime_error("assemble_weighted_load: non-finite integrand in element " +
                                         std::to_string(e));
            }
            const double scale = geom.area * q.w * gq;
            load[static_cast<std::size_t>(tri[0])] += scale * q.l0;
            load[static_cast<std::size_t>(tri[1])] += scale * q.l1;
            load[static_cast<std::size_t>(tri[2])] += scale * q.l2;
        }
    }
    return load;
}

double potential_integral(const Mesh& mesh, const NodalFunction& phi, const PotentialSpec& pot) {
    check_phi_size(mesh, phi, "potential_integral");
    double acc = 0.0;
    for (int e = 0; e < mesh.triangle_count(); ++e) {
        const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
        const auto geom = element_geometry(mesh, e);
        const double v0 = phi[static_cast<std::size_t>(tri[0])];
        const double v1 = phi[static_cast<std::size_t>(tri[1])];
        const double v2 = phi[static_cast<std::size_t>(tri[2])];
        double local = 0.0;
        for (const auto& q : kTriQuadratureDegree4) {
            local += q.w * pot.F(q.l0 * v0 + q.l1 * v1 + q.l2 * v2);
        }
        if (!std::isfinite(local)) {
            throw std::runtime_error("potential_integral: non-finite integrand in element " +
                                     std::to_string(e));
        }
        acc += geom.area * local;
    }
    return acc;
}

NodalFunction l2_project(const Mesh& mesh, const std::function<double(double, double)>& f,
                         double tol) {
    NodalFunction dummy(static_cast<std::size_t>(mesh.node_count()));
    const auto rhs = assemble_weighted_load(mesh, dummy,
                                            [&f](double x, double y, double) { return f(x, y); });
    const SparseOperator m = assemble_mass(mesh);
    return NodalFunction(spd_solve(m, rhs, tol));
}

}  // namespace chsav

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chsav/assembly.hpp"

namespace chsav::test {

namespace {

struct QuadPoint5 {
    double l0, l1, l2, w;
};

// 7-point rule, exact to degree 5; deliberately different from the rule the
// library assembles with.
constexpr std::array<QuadPoint5, 7> kDegree5Rule = {{
    {1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225},
    {0.059715871789770, 0.470142064105115, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.059715871789770, 0.470142064105115, 0.132394152788506},
    {0.470142064105115, 0.470142064105115, 0.059715871789770, 0.132394152788506},
    {0.797426985353087, 0.101286507323456, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.797426985353087, 0.101286507323456, 0.125939180544827},
    {0.101286507323456, 0.101286507323456, 0.797426985353087, 0.125939180544827},
}};

double triangle_area(const Mesh& mesh, int e) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
    const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
    return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]));
}

// Gradient of hat k on element e from the barycentric coefficient form
// lambda_k(x, y) = a + b x + c y.
std::array<double, 2> hat_gradient(const Mesh& mesh, int e, int k) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
    const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    switch (k) {
        case 0: return {(p1[1] - p2[1]) / det, (p2[0] - p1[0]) / det};
        case 1: return {(p2[1] - p0[1]) / det, (p0[0] - p2[0]) / det};
        default: return {(p0[1] - p1[1]) / det, (p1[0] - p0[0]) / det};
    }
}

}  // namespace

std::array<double, 3> barycentric(const Mesh& mesh, int e, double x, double y) {
    const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
    const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double l1 = ((x - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (y - p0[1])) / det;
    const double l2 = ((p1[0] - p0[0]) * (y - p0[1]) - (x - p0[0]) * (p1[1] - p0[1])) / det;
    return {1.0 - l1 - l2, l1, l2};
}

std::vector<std::vector<double>> dense_mass_oracle(const Mesh& mesh) {
    const auto n = static_cast<std::size_t>(mesh.node_count());
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int e = 0; e < mesh.triangle_count(); ++e) {
                const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
                int ia = -1, ib = -1;
                for (int k = 0; k < 3; ++k) {
                    if (tri[static_cast<std::size_t>(k)] == static_cast<int>(a)) ia = k;
                    if (tri[static_cast<std::size_t>(k)] == static_cast<int>(b)) ib = k;
                }
                if (ia < 0 || ib < 0) continue;
                const double area = triangle_area(mesh, e);
                const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
                const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
                const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];
                for (const auto& q : kDegree5Rule) {
                    const double x = q.l0 * p0[0] + q.l1 * p1[0] + q.l2 * p2[0];
                    const double y = q.l0 * p0[1] + q.l1 * p1[1] + q.l2 * p2[1];
                    const auto lambda = barycentric(mesh, e, x, y);
                    acc += area * q.w * lambda[static_cast<std::size_t>(ia)] *
                           lambda[static_cast<std::size_t>(ib)];
                }
            }
            m[a][b] = acc;
        }
    }
    return m;
}

std::vector<std::vector<double>> dense_stiffness_oracle(const Mesh& mesh) {
    const auto n = static_cast<std::size_t>(mesh.node_count());
    std::vector<std::vector<double>> k_mat(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int e = 0; e < mesh.triangle_count(); ++e) {
                const auto& tri = mesh.triangles[static_cast<std::size_t>(e)];
                int ia = -1, ib = -1;
                for (int kk = 0; kk < 3; ++kk) {
                    if (tri[static_cast<std::size_t>(kk)] == static_cast<int>(a)) ia = kk;
                    if (tri[static_cast<std::size_t>(kk)] == static_cast<int>(b)) ib = kk;
                }
                if (ia < 0 || ib < 0) continue;
                const double area = triangle_area(mesh, e);
                const auto ga = hat_gradient(mesh, e, ia);
                const auto gb = hat_gradient(mesh, e, ib);
                acc += area * (ga[0] * gb[0] + ga[1] * gb[1]);
            }
            k_mat[a][b] = acc;
        }
    }
    return k_mat;
}

std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0) throw std::runtime_error("dense_solve: singular matrix");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

double eval_p1(const Mesh& mesh, const NodalFunction& v, double x, double y) {
    const int n = mesh.resolution;
    const int ci = std::min(static_cast<int>(x * n), n - 1);
    const int cj = std::min(static_cast<int>(y * n), n - 1);
    const double dx = x * n - ci;
    const double dy = y * n - cj;
    const double va = v[static_cast<std::size_t>(mesh.node_index(ci, cj))];
    const double vb = v[static_cast<std::size_t>(mesh.node_index(ci + 1, cj))];
    const double vc = v[static_cast<std::size_t>(mesh.node_index(ci + 1, cj + 1))];
    const double vd = v[static_cast<std::size_t>(mesh.node_index(ci, cj + 1))];
    if (dx >= dy) {
        return va * (1.0 - dx) + vb * (dx - dy) + vc * dy;
    }
    return va * (1.0 - dy) + vc * dx + vd * (dy - dx);
}

double StepResiduals::max() const { return std::max({row_phi, row_mu, row_r}); }

StepResiduals step_residuals(const State& state, const State& next, const SimOperators& ops,
                             const PotentialSpec& pot) {
    const int n = ops.mesh.node_count();
    const double dt = ops.block.dt();
    const double energy = shifted_energy(ops.mesh, state.phi, pot);
    const double inv_sqrt = 1.0 / std::sqrt(energy);
    const auto load = assemble_weighted_load(
        ops.mesh, state.phi,
        [&](double, double, double p) { return pot.dF(p) * inv_sqrt; });

    const auto m_phi_next = ops.mass.apply(next.phi);
    const auto k_mu_next = ops.stiffness.apply(next.mu);
    const auto m_phi_prev = ops.mass.apply(state.phi);
    const auto m_mu_next = ops.mass.apply(next.mu);
    const auto k_phi_next = ops.stiffness.apply(next.phi);

    StepResiduals res;
    double lb_next = 0.0, lb_prev = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        res.row_phi = std::max(res.row_phi,
                               std::abs(m_phi_next[u] + dt * k_mu_next[u] - m_phi_prev[u]));
        res.row_mu =
            std::max(res.row_mu, std::abs(m_mu_next[u] - k_phi_next[u] - next.r * load[u]));
        lb_next += load[u] * next.phi[u];
        lb_prev += load[u] * state.phi[u];
    }
    res.row_r = std::abs(next.r - 0.5 * lb_next - state.r + 0.5 * lb_prev);
    return res;
}

}  // namespace chsav::test

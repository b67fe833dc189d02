#include "chsav/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chsav/assembly.hpp"

namespace chsav {

double mass(const SparseOperator& m, const NodalFunction& phi) {
    const auto mphi = m.apply(phi);
    double acc = 0.0;
    for (double v : mphi) acc += v;
    return acc;
}

EnergyPair energies(const Mesh& mesh, const SparseOperator& /*m*/, const SparseOperator& k,
                    const NodalFunction& phi, double r, const PotentialSpec& pot) {
    const double dirichlet = 0.5 * quadratic_form(k, phi);
    EnergyPair e;
    e.original = dirichlet + potential_integral(mesh, phi, pot);
    e.modified = dirichlet + r * r;
    return e;
}

double energy_identity_residual(const State& prev, const State& next, const SparseOperator& k,
                                double dt) {
    if (prev.phi.size() != next.phi.size()) {
        throw std::invalid_argument("energy_identity_residual: states on different meshes");
    }
    const std::size_t n = prev.phi.size();
    std::vector<double> dphi(n);
    for (std::size_t i = 0; i < n; ++i) dphi[i] = next.phi[i] - prev.phi[i];

    const double e_prev = 0.5 * quadratic_form(k, prev.phi) + prev.r * prev.r;
    const double e_next = 0.5 * quadratic_form(k, next.phi) + next.r * next.r;
    const double dr = next.r - prev.r;
    return e_next - e_prev + 0.5 * quadratic_form(k, dphi) + dr * dr +
           dt * quadratic_form(k, next.mu);
}

double norm_l2(const SparseOperator& m, const NodalFunction& v) {
    return std::sqrt(quadratic_form(m, v));
}

double norm_h1(const SparseOperator& m, const SparseOperator& k, const NodalFunction& v) {
    return std::sqrt(quadratic_form(m, v) + quadratic_form(k, v));
}

CompositeNorms composite_norms(std::span<const double> h1_series,
                               std::span<const double> r_error_series, double dt) {
    CompositeNorms out;
    double sum_sq = 0.0;
    for (double v : h1_series) {
        out.sup_h1 = std::max(out.sup_h1, v);
        sum_sq += dt * v * v;
    }
    out.l2_in_time_h1 = std::sqrt(sum_sq);
    for (double v : r_error_series) out.sup_abs_r = std::max(out.sup_abs_r, std::abs(v));
    return out;
}

}  // namespace chsav

// diagnostics.hpp
// Scalar functionals of states: mass, both energies, the per-step energy
// identity residual, and the discrete norms used by the convergence harness.

#pragma once

#include <span>

#include "chsav/mesh.hpp"
#include "chsav/nodal_function.hpp"
#include "chsav/potential.hpp"
#include "chsav/sparse.hpp"
#include "chsav/state.hpp"

namespace chsav {

struct DiagnosticsRecord {
    double t = 0.0;
    double mass = 0.0;
    double energy_original = 0.0;  // 1/2 |phi|_K^2 + int F(phi) dx, no C0 shift
    double energy_modified = 0.0;  // 1/2 |phi|_K^2 + r^2
    double r = 0.0;
    double grad_mu_sq = 0.0;       // |mu|_K^2
};

// 1^T M phi
double mass(const SparseOperator& m, const NodalFunction& phi);

struct EnergyPair {
    double original = 0.0;
    double modified = 0.0;
};

EnergyPair energies(const Mesh& mesh, const SparseOperator& m, const SparseOperator& k,
                    const NodalFunction& phi, double r, const PotentialSpec& pot);

// E^{n+1} - E^n + 1/2 |dphi|_K^2 + (dr)^2 + dt |mu^{n+1}|_K^2 with
// E^n = 1/2 |phi^n|_K^2 + (r^n)^2. Zero for an exact step.
double energy_identity_residual(const State& prev, const State& next,
                                const SparseOperator& k, double dt);

double norm_l2(const SparseOperator& m, const NodalFunction& v);
double norm_h1(const SparseOperator& m, const SparseOperator& k, const NodalFunction& v);

struct CompositeNorms {
    double sup_h1 = 0.0;         // max over records of the H1 norms
    double l2_in_time_h1 = 0.0;  // sqrt(sum dt * h1^2)
    double sup_abs_r = 0.0;      // max |r - r_ref|
};

CompositeNorms composite_norms(std::span<const double> h1_series,
                               std::span<const double> r_error_series, double dt);

}  // namespace chsav

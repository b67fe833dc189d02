// sav.hpp
// The scalar-auxiliary-variable scheme for the Cahn-Hilliard equation:
// shifted energy, initial state, one decoupled backward-Euler step, and
// full trajectory integration.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "chsav/diagnostics.hpp"
#include "chsav/linsolve.hpp"
#include "chsav/mesh.hpp"
#include "chsav/potential.hpp"
#include "chsav/state.hpp"

namespace chsav {

struct SchemeConfig {
    int n = 16;          // mesh resolution (cells per side)
    double dt = 1e-3;    // time step
    double T = 5.0;      // final time
    PotentialSpec potential{};
    double projection_tol = 1e-14;  // mass-solve tolerance for initial data
    int record_every = 1;           // steps between diagnostic records

    // Empty => 0.05 sin(2 pi x) sin(2 pi y).
    std::function<double(double, double)> initial_condition{};
};

double default_initial_condition(double x, double y);

// Everything a step needs: mesh, mass, stiffness, factorized block system.
// Immutable after construction; the factorization is reused for every step.
struct SimOperators {
    Mesh mesh;
    SparseOperator mass;
    SparseOperator stiffness;
    BlockSolver block;
};

SimOperators build_operators(Mesh mesh, double dt);

// int F(phi_h) dx + C0; always >= C0 > 0.
double shifted_energy(const Mesh& mesh, const NodalFunction& phi, const PotentialSpec& pot);

// phi = L2 projection of the initial condition, r = sqrt(shifted energy),
// mu = 0 (unused by the first step), t = 0.
State initial_state(const Mesh& mesh, const SchemeConfig& config);

// One backward-Euler step via the decoupled algorithm: two solves against
// the shared factorization plus one scalar update of r.
State sav_step(const State& state, const SimOperators& ops, const PotentialSpec& pot);

struct RunResult {
    std::vector<DiagnosticsRecord> trace;
    State final_state;
    std::vector<std::pair<double, NodalFunction>> snapshots;  // (time, phi)
    std::uint64_t factorize_count = 0;
    std::uint64_t block_solve_count = 0;
    long steps = 0;
    // First step at which r lost positivity, -1 if it never did. Large time
    // steps can flip the sign of r while the modified energy still decays;
    // trajectories at production step sizes keep r > 0.
    long first_nonpositive_r_step = -1;
};

// ceil(T/dt) steps with a roundoff guard so exact-ratio configs do not gain
// a spurious extra step.
long step_count_for(double T, double dt);

// Integrates to T, recording diagnostics at the configured cadence (the
// first and last steps are always recorded) and capturing phi snapshots at
// the steps nearest the requested times.
RunResult run(const SchemeConfig& config, std::span<const double> snapshot_times = {});

}  // namespace chsav

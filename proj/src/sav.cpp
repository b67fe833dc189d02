#include "chsav/sav.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "chsav/assembly.hpp"

namespace chsav {

double default_initial_condition(double x, double y) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return 0.05 * std::sin(two_pi * x) * std::sin(two_pi * y);
}

SimOperators build_operators(Mesh mesh, double dt) {
    SparseOperator mass = assemble_mass(mesh);
    SparseOperator stiffness = assemble_stiffness(mesh);
    BlockSolver block(mass, stiffness, dt);
    block.factorize();
    return SimOperators{std::move(mesh), std::move(mass), std::move(stiffness), std::move(block)};
}

double shifted_energy(const Mesh& mesh, const NodalFunction& phi, const PotentialSpec& pot) {
    if (!(pot.C0 > 0.0)) {
        throw std::invalid_argument("shifted_energy: C0 must be positive");
    }
    return potential_integral(mesh, phi, pot) + pot.C0;
}

State initial_state(const Mesh& mesh, const SchemeConfig& config) {
    const auto& f = config.initial_condition ? config.initial_condition
                                             : std::function<double(double, double)>(default_initial_condition);
    State state;
    state.t = 0.0;
    state.phi = l2_project(mesh, f, config.projection_tol);
    state.mu = NodalFunction(static_cast<std::size_t>(mesh.node_count()), 0.0);
    state.r = std::sqrt(shifted_energy(mesh, state.phi, config.potential));
    return state;
}

State sav_step(const State& state, const SimOperators& ops, const PotentialSpec& pot) {
    const int n = ops.mesh.node_count();
    if (state.phi.size() != static_cast<std::size_t>(n) ||
        state.mu.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("sav_step: state does not match the operator mesh");
    }

    // Source weight b = F'(phi^n) / sqrt(E(phi^n)) at quadrature points.
    const double energy = shifted_energy(ops.mesh, state.phi, pot);
    const double inv_sqrt_energy = 1.0 / std::sqrt(energy);
    const auto load = assemble_weighted_load(
        ops.mesh, state.phi,
        [&pot, inv_sqrt_energy](double, double, double phi_q) {
            return pot.dF(phi_q) * inv_sqrt_energy;
        });

    // Subsystem 1: sources (M phi^n, 0); subsystem 2: sources (0, L_b).
    const auto mass_phi = ops.mass.apply(state.phi);
    const std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
    const auto [phi1, mu1] = ops.block.solve(mass_phi, zero);
    const auto [phi2, mu2] = ops.block.solve(zero, load);

    // r update: the load-vector dot products realize the L2 pairings.
    const double denom = 1.0 - 0.5 * dot(load, phi2);
    if (std::abs(denom) < 1e-12) {
        throw std::runtime_error("sav_step: degenerate denominator " + std::to_string(denom) +
                                 " in the auxiliary-variable update");
    }
    double numer = state.r;
    for (int i = 0; i < n; ++i) {
        numer += 0.5 * load[static_cast<std::size_t>(i)] *
                 (phi1[static_cast<std::size_t>(i)] - state.phi[static_cast<std::size_t>(i)]);
    }
    const double r_next = numer / denom;
    if (!std::isfinite(r_next)) {
        throw std::runtime_error("sav_step: non-finite auxiliary variable");
    }

    State next;
    next.t = state.t + ops.block.dt();
    next.r = r_next;
    next.phi = NodalFunction(static_cast<std::size_t>(n));
    next.mu = NodalFunction(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        next.phi[u] = phi1[u] + r_next * phi2[u];
        next.mu[u] = mu1[u] + r_next * mu2[u];
        if (!std::isfinite(next.phi[u]) || !std::isfinite(next.mu[u])) {
            throw std::runtime_error("sav_step: non-finite field value at node " + std::to_string(i));
        }
    }
    return next;
}

long step_count_for(double T, double dt) {
    if (!(dt > 0.0) || !(T >= dt)) {
        throw std::invalid_argument("step_count_for: need dt > 0 and T >= dt");
    }
    return static_cast<long>(std::ceil(T / dt - 1e-9));
}

namespace {

DiagnosticsRecord make_record(const SimOperators& ops, const PotentialSpec& pot,
                              const State& state) {
    DiagnosticsRecord rec;
    rec.t = state.t;
    rec.mass = mass(ops.mass, state.phi);
    const auto e = energies(ops.mesh, ops.mass, ops.stiffness, state.phi, state.r, pot);
    rec.energy_original = e.original;
    rec.energy_modified = e.modified;
    rec.r = state.r;
    rec.grad_mu_sq = quadratic_form(ops.stiffness, state.mu);
    return rec;
}

}  // namespace

RunResult run(const SchemeConfig& config, std::span<const double> snapshot_times) {
    if (config.n < 1) throw std::invalid_argument("run: n must be >= 1");
    if (config.record_every < 1) throw std::invalid_argument("run: record_every must be >= 1");
    const long steps = step_count_for(config.T, config.dt);

    SimOperators ops = build_operators(build_unit_square_mesh(config.n), config.dt);
    State state = initial_state(ops.mesh, config);

    // Map requested snapshot times to the nearest step index.
    std::vector<std::pair<long, double>> snapshot_steps;
    snapshot_steps.reserve(snapshot_times.size());
    for (double ts : snapshot_times) {
        long k = std::lround(ts / config.dt);
        k = std::max(0L, std::min(steps, k));
        snapshot_steps.emplace_back(k, ts);
    }

    RunResult result;
    result.steps = steps;
    result.trace.push_back(make_record(ops, config.potential, state));
    for (const auto& [k, ts] : snapshot_steps) {
        if (k == 0) result.snapshots.emplace_back(ts, state.phi);
    }

    for (long step = 1; step <= steps; ++step) {
        try {
            state = sav_step(state, ops, config.potential);
        } catch (const std::exception& err) {
            throw std::runtime_error("run: step " + std::to_string(step) + " failed: " + err.what());
        }
        if (!(state.r > 0.0) && result.first_nonpositive_r_step < 0) {
            result.first_nonpositive_r_step = step;
        }
        if (step % config.record_every == 0 || step == steps) {
            result.trace.push_back(make_record(ops, config.potential, state));
        }
        for (const auto& [k, ts] : snapshot_steps) {
            if (k == step) result.snapshots.emplace_back(ts, state.phi);
        }
    }

    result.final_state = std::move(state);
    result.factorize_count = ops.block.factorize_count();
    result.block_solve_count = ops.block.solve_count();
    return result;
}

}  // namespace chsav

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Criteria 5 and 6 also print an informational block with the same study
// run in a resolved-parameter regime, to separate scheme-order questions
// from protocol-calibration questions.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "chsav/assembly.hpp"
#include "chsav/diagnostics.hpp"
#include "chsav/harness.hpp"
#include "chsav/sav.hpp"
#include "support.hpp"

using namespace chsav;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-28s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

void info(const std::string& text) { std::printf("       note: %s\n", text.c_str()); }

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

std::string rates_string(const ConvergenceReport& r) {
    std::string out = "phi {";
    for (const auto& rate : r.rates) out += fmt(" %.3f", rate.phi);
    out += " } mu {";
    for (const auto& rate : r.rates) out += fmt(" %.3f", rate.mu);
    out += " } r {";
    for (const auto& rate : r.rates) out += fmt(" %.3f", rate.r);
    out += " }";
    return out;
}

// --- criterion 1: per-step energy identity -------------------------------

void criterion_energy_identity() {
    SchemeConfig config;
    config.n = 16;
    config.dt = 1e-3;
    const Mesh mesh = build_unit_square_mesh(config.n);
    SimOperators ops = build_operators(mesh, config.dt);
    State s = initial_state(mesh, config);
    const double e0 = 0.5 * quadratic_form(ops.stiffness, s.phi) + s.r * s.r;
    const double bound = 1e-9 * std::max(1.0, e0);
    double worst = 0.0;
    for (int step = 0; step < 100; ++step) {
        const State next = sav_step(s, ops, config.potential);
        worst = std::max(worst, std::abs(energy_identity_residual(s, next, ops.stiffness, config.dt)));
        s = next;
    }
    report(1, "energy identity", worst <= bound,
           fmt("max |residual| %.3e <= %.3e over 100 steps", worst, bound));
}

// --- criterion 2: unconditional stability --------------------------------

void criterion_unconditional_stability() {
    bool pass = true;
    double worst_rise = 0.0;
    for (double dt : {1e-4, 1e-2, 1.0, 10.0}) {
        SchemeConfig config;
        config.n = 16;
        config.dt = dt;
        config.T = 20 * dt;
        const auto result = run(config);
        const double slack = 1e-12 * std::max(1.0, result.trace.front().energy_modified);
        for (std::size_t i = 1; i < result.trace.size(); ++i) {
            const double rise = result.trace[i].energy_modified - result.trace[i - 1].energy_modified;
            worst_rise = std::max(worst_rise, rise);
            if (rise > slack) pass = false;
        }
    }
    report(2, "unconditional stability", pass,
           fmt("max energy rise %.3e over dt in {1e-4,1e-2,1,10}, 20 steps each", worst_rise));
}

// --- criteria 3, 4, 10 share the production run --------------------------

RunResult production_run() {
    SchemeConfig config;  // n=16, dt=1e-3, T=5, eps=0.1, C0=1
    return run(config);
}

void criterion_mass_conservation(const RunResult& result) {
    const double m0 = result.trace.front().mass;
    double worst = 0.0;
    for (const auto& rec : result.trace) worst = std::max(worst, std::abs(rec.mass - m0));
    report(3, "mass conservation", worst <= 1e-10,
           fmt("max |mass - mass0| %.3e <= 1e-10 over %ld steps", worst, result.steps));
}

void criterion_energy_plateau(const RunResult& result) {
    const auto at = [&](double t) {
        double best = 1e300;
        DiagnosticsRecord rec{};
        for (const auto& r : result.trace) {
            if (std::abs(r.t - t) < best) {
                best = std::abs(r.t - t);
                rec = r;
            }
        }
        return rec;
    };
    const double e0 = at(0.0).energy_modified;
    const double e1 = at(1.0).energy_modified;
    const double e5 = at(5.0).energy_modified;
    const double lhs = std::abs(e5 - e1);
    const double rhs = 0.05 * std::abs(e0 - e1);
    report(4, "energy plateau", lhs <= rhs, fmt("|E(5)-E(1)| %.3e <= 0.05|E(0)-E(1)| %.3e", lhs, rhs));
}

void criterion_factorization_reuse(const RunResult& result) {
    const bool pass = result.factorize_count == 1 &&
                      result.block_solve_count == 2 * static_cast<std::uint64_t>(result.steps);
    report(10, "factorization reuse", pass,
           fmt("%llu factorization(s), %llu solves for %ld steps (expect 1 and %ld)",
               static_cast<unsigned long long>(result.factorize_count),
               static_cast<unsigned long long>(result.block_solve_count), result.steps,
               2 * result.steps));
}

// --- criterion 5: temporal rates ------------------------------------------

void criterion_temporal_rates() {
    PotentialSpec pot{0.1, 1.0, {}};
    const std::vector<double> ladder = {1.0 / 100, 1.0 / 200, 1.0 / 400, 1.0 / 800};
    const auto report_stated = temporal_study(32, ladder, 1.0 / 12800, 0.1, pot);
    const bool pass = rates_within(report_stated, 0.7, 1.3, 0.7, 1.3);
    report(5, "temporal rates (desk)", pass, rates_string(report_stated) + " target [0.7,1.3]");
    if (!pass) {
        info("coarsest rung has ~16 linear e-foldings per step at these parameters; the");
        info("asymptotic first-order regime needs roughly dt <= 6e-4 on this problem.");
        const std::vector<double> resolved = {1e-4, 5e-5, 2.5e-5, 1.25e-5};
        const auto evidence = temporal_study(32, resolved, 3.125e-6, 0.01, pot);
        const bool evidence_pass = rates_within(evidence, 0.7, 1.3, 0.7, 1.3);
        info(fmt("resolved ladder (T=0.01, dt 1e-4..1.25e-5, ref 3.125e-6, n=32): %s -> %s",
                 rates_string(evidence).c_str(), evidence_pass ? "all in [0.7,1.3]" : "out of band"));
    }
}

// --- criterion 6: spatial rates --------------------------------------------

void criterion_spatial_rates() {
    PotentialSpec pot{0.1, 1.0, {}};
    const std::vector<int> ladder = {4, 8, 16};
    const auto study = spatial_study(2e-5, ladder, 64, 0.01, pot);
    const bool bands_ok = rates_within(study, 0.7, 1.3, 1.6, 2.5);
    bool ratio_ok = true;
    for (const auto& rung : study.errors) {
        if (!(rung.e_r <= 1e-2 * rung.e_phi)) ratio_ok = false;
    }
    std::string ratios = "e_r/e_phi {";
    for (const auto& rung : study.errors) ratios += fmt(" %.2e", rung.e_r / rung.e_phi);
    ratios += " }";
    report(6, "spatial rates (desk)", bands_ok && ratio_ok,
           rates_string(study) + " " + ratios + " target phi,mu [0.7,1.3], r [1.6,2.5], ratio <= 1e-2");
    if (!(bands_ok && ratio_ok)) {
        info("by T=0.01 the layer has hardened through a stiff transition whose timing is");
        info("mesh-dependent, so coarse/fine trajectories separate; nested-node sampling");
        info("also superconverges for smooth fields, pushing phi/mu rates off first order.");
        const std::vector<int> mild = {4, 8, 16};
        const auto evidence = spatial_study(1e-5, mild, 64, 0.001, pot);
        info(fmt("pre-transition protocol (T=0.001, dt=1e-5): %s", rates_string(evidence).c_str()));
        std::string er = "e_r magnitudes {";
        for (const auto& rung : evidence.errors) er += fmt(" %.2e", rung.e_r);
        info(er + " } (r error shrinking at >= second order)");
    }
}

// --- criterion 7: oracle equivalence ---------------------------------------

void criterion_oracles() {
    double worst_gram = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const Mesh mesh = build_unit_square_mesh(n);
        const auto m = assemble_mass(mesh);
        const auto k = assemble_stiffness(mesh);
        const auto m_oracle = test::dense_mass_oracle(mesh);
        const auto k_oracle = test::dense_stiffness_oracle(mesh);
        for (int i = 0; i < mesh.node_count(); ++i) {
            for (int j = 0; j < mesh.node_count(); ++j) {
                worst_gram = std::max(worst_gram,
                                      std::abs(m.coeff(i, j) - m_oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
                worst_gram = std::max(worst_gram,
                                      std::abs(k.coeff(i, j) - k_oracle[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
            }
        }
    }

    const Mesh mesh2 = build_unit_square_mesh(2);
    BlockSolver solver(assemble_mass(mesh2), assemble_stiffness(mesh2), 0.1);
    solver.factorize();
    std::vector<std::vector<double>> dense(static_cast<std::size_t>(2 * mesh2.node_count()),
                                           std::vector<double>(static_cast<std::size_t>(2 * mesh2.node_count()), 0.0));
    const auto& a = solver.matrix();
    for (int r = 0; r < a.rows(); ++r) {
        for (int kk = a.offsets()[r]; kk < a.offsets()[r + 1]; ++kk) {
            dense[static_cast<std::size_t>(r)][static_cast<std::size_t>(a.columns()[static_cast<std::size_t>(kk)])] =
                a.values()[static_cast<std::size_t>(kk)];
        }
    }
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst_solve = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> rhs(static_cast<std::size_t>(2 * mesh2.node_count()));
        for (auto& v : rhs) v = dist(rng);
        const auto [phi, mu] = solver.solve(rhs);
        const auto x = test::dense_solve(dense, rhs);
        for (int i = 0; i < mesh2.node_count(); ++i) {
            worst_solve = std::max(worst_solve,
                                   std::abs(phi[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]));
            worst_solve = std::max(worst_solve,
                                   std::abs(mu[static_cast<std::size_t>(i)] -
                                            x[static_cast<std::size_t>(mesh2.node_count() + i)]));
        }
    }
    report(7, "oracle equivalence", worst_gram <= 1e-12 && worst_solve <= 1e-10,
           fmt("Gram mismatch %.3e <= 1e-12 (n<=4), block-solve mismatch %.3e <= 1e-10 (n=2)",
               worst_gram, worst_solve));
}

// --- criterion 8: decoupling consistency -----------------------------------

void criterion_decoupling_consistency() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> uphi(-1.0, 1.0);
    std::uniform_real_distribution<double> udt(1e-4, 1.0);
    std::uniform_real_distribution<double> ueps(0.05, 0.5);
    std::uniform_real_distribution<double> uc0(0.5, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        PotentialSpec pot{ueps(rng), uc0(rng), {}};
        const Mesh mesh = build_unit_square_mesh(n);
        SimOperators ops = build_operators(mesh, udt(rng));
        State s;
        s.phi = NodalFunction(static_cast<std::size_t>(mesh.node_count()));
        s.mu = NodalFunction(static_cast<std::size_t>(mesh.node_count()));
        for (auto& v : s.phi.values) v = uphi(rng);
        s.r = std::sqrt(shifted_energy(mesh, s.phi, pot)) * (0.5 + 0.5 * std::abs(uphi(rng)));
        const State next = sav_step(s, ops, pot);
        worst = std::max(worst, test::step_residuals(s, next, ops, pot).max());
    }
    report(8, "decoupling consistency", worst <= 1e-9,
           fmt("max coupled-system residual %.3e <= 1e-9 over 50 random steps", worst));
}

// --- criterion 9: fixed point -----------------------------------------------

void criterion_fixed_point() {
    // c = 0.8 lies outside the spinodal band |c| < 1/sqrt(3): the constant
    // state is a stable equilibrium there, so roundoff stays at roundoff.
    // Inside the band the equilibrium is genuinely unstable and 100 stiff
    // steps amplify machine noise into decomposition.
    const Mesh mesh = build_unit_square_mesh(8);
    PotentialSpec pot{0.1, 1.0, {}};
    SimOperators ops = build_operators(mesh, 1e-3);
    const double c = 0.8;
    State s;
    s.phi = NodalFunction(static_cast<std::size_t>(mesh.node_count()), c);
    s.mu = NodalFunction(static_cast<std::size_t>(mesh.node_count()), 0.0);
    s.r = std::sqrt(shifted_energy(mesh, s.phi, pot));
    const double r0 = s.r;
    double worst_phi = 0.0, worst_r = 0.0;
    for (int step = 0; step < 100; ++step) {
        s = sav_step(s, ops, pot);
        for (double v : s.phi.values) worst_phi = std::max(worst_phi, std::abs(v - c));
        worst_r = std::max(worst_r, std::abs(s.r - r0));
    }
    report(9, "fixed point", worst_phi <= 1e-11 && worst_r <= 1e-11,
           fmt("c=0.8: max |phi - c| %.3e, max |r - r0| %.3e over 100 steps (<= 1e-11)", worst_phi,
               worst_r));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_energy_identity();
    criterion_unconditional_stability();
    const RunResult production = production_run();
    criterion_mass_conservation(production);
    criterion_energy_plateau(production);
    criterion_temporal_rates();
    criterion_spatial_rates();
    criterion_oracles();
    criterion_decoupling_consistency();
    criterion_fixed_point();
    criterion_factorization_reuse(production);
    const auto t1 = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(t1 - t0).count();
    std::printf("%d of 10 criteria passed (%.1f s)\n", 10 - g_failures, seconds);
    return g_failures == 0 ? 0 : 1;
}

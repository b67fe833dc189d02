// harness.cpp
// Ladder studies against a cached fine reference; errors are measured on the
// rung's mesh (the reference is injected onto coarse nodes, exact for nested
// P1 spaces) at the rung's record times (exact because dt_ref divides dt).

#include "chsav/harness.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "chsav/assembly.hpp"
#include "chsav/diagnostics.hpp"
#include "chsav/sav.hpp"

namespace chsav {

namespace {

long integer_ratio(double coarse, double fine, const char* what) {
    const double q = coarse / fine;
    const long rounded = std::lround(q);
    if (rounded < 1 || std::abs(q - static_cast<double>(rounded)) > 1e-9 * q) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(coarse) +
                                    " is not an integer multiple of " + std::to_string(fine));
    }
    return rounded;
}

void check_halving_ladder(std::span<const double> ladder, const char* what) {
    if (ladder.empty()) throw std::invalid_argument(std::string(what) + ": empty ladder");
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const double q = ladder[i] / ladder[i + 1];
        if (std::abs(q - 2.0) > 1e-9) {
            throw std::invalid_argument(std::string(what) +
                                        ": ladder must decrease by factors of 2");
        }
    }
}

// Steps the scheme `total_steps` times, returning the states whose step
// index appears in `capture_steps` (sorted ascending, may include 0).
std::vector<State> run_capturing(const SimOperators& ops, const PotentialSpec& pot,
                                 const State& initial, long total_steps,
                                 std::span<const long> capture_steps) {
    std::vector<State> captured;
    captured.reserve(capture_steps.size());
    std::size_t next_capture = 0;
    if (next_capture < capture_steps.size() && capture_steps[next_capture] == 0) {
        captured.push_back(initial);
        ++next_capture;
    }
    State state = initial;
    for (long step = 1; step <= total_steps; ++step) {
        state = sav_step(state, ops, pot);
        while (next_capture < capture_steps.size() && capture_steps[next_capture] == step) {
            captured.push_back(state);
            ++next_capture;
        }
    }
    return captured;
}

std::vector<long> every_step(long total_steps) {
    std::vector<long> steps(static_cast<std::size_t>(total_steps) + 1);
    for (long k = 0; k <= total_steps; ++k) steps[static_cast<std::size_t>(k)] = k;
    return steps;
}

ConvergenceReport::Rate rates_between(const ConvergenceReport::Rung& coarse,
                                      const ConvergenceReport::Rung& fine) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ConvergenceReport::Rate rate{nan, nan, nan};
    if (coarse.e_phi > 0.0 && fine.e_phi > 0.0) rate.phi = compute_rate(coarse.e_phi, fine.e_phi);
    if (coarse.e_mu > 0.0 && fine.e_mu > 0.0) rate.mu = compute_rate(coarse.e_mu, fine.e_mu);
    if (coarse.e_r > 0.0 && fine.e_r > 0.0) rate.r = compute_rate(coarse.e_r, fine.e_r);
    return rate;
}

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

double compute_rate(double e_coarse, double e_fine) {
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) {
        throw std::domain_error("compute_rate: undefined rate for nonpositive errors (" +
                                std::to_string(e_coarse) + ", " + std::to_string(e_fine) + ")");
    }
    return std::log2(e_coarse / e_fine);
}

ConvergenceReport temporal_study(int n_fixed, std::span<const double> dt_ladder,
                                 double dt_reference, double T, const PotentialSpec& pot) {
    check_halving_ladder(dt_ladder, "temporal_study");
    for (double dt : dt_ladder) {
        integer_ratio(dt, dt_reference, "temporal_study: reference step");
        integer_ratio(T, dt, "temporal_study: final time");
    }

    const Mesh mesh = build_unit_square_mesh(n_fixed);
    const SparseOperator m = assemble_mass(mesh);
    const SparseOperator k = assemble_stiffness(mesh);

    SchemeConfig init_config;
    init_config.n = n_fixed;
    init_config.potential = pot;
    const State initial = initial_state(mesh, init_config);

    // One reference trajectory, captured at the union of all rung record
    // times (multiples of the finest rung dt).
    const double dt_min = dt_ladder.back();
    const long unit_count = integer_ratio(T, dt_min, "temporal_study: final time");
    const long ref_stride = integer_ratio(dt_min, dt_reference, "temporal_study: reference step");
    const long ref_steps = unit_count * ref_stride;
    std::vector<long> ref_captures(static_cast<std::size_t>(unit_count) + 1);
    for (long j = 0; j <= unit_count; ++j) ref_captures[static_cast<std::size_t>(j)] = j * ref_stride;

    const SimOperators ref_ops = build_operators(mesh, dt_reference);
    const std::vector<State> reference =
        run_capturing(ref_ops, pot, initial, ref_steps, ref_captures);

    ConvergenceReport report;
    report.kind = StudyKind::temporal;
    report.ladder.assign(dt_ladder.begin(), dt_ladder.end());
    report.reference_param = dt_reference;
    report.n_fixed = n_fixed;
    report.T = T;

    for (double dt : dt_ladder) {
        const long steps = integer_ratio(T, dt, "temporal_study: final time");
        const long stride = integer_ratio(dt, dt_min, "temporal_study: ladder spacing");
        const SimOperators ops = build_operators(mesh, dt);
        const auto captures = every_step(steps);
        const auto states = run_capturing(ops, pot, initial, steps, captures);

        std::vector<double> h1_phi, h1_mu, r_err;
        h1_phi.reserve(states.size());
        h1_mu.reserve(states.size());
        r_err.reserve(states.size());
        for (long rec = 0; rec <= steps; ++rec) {
            const State& rung = states[static_cast<std::size_t>(rec)];
            const State& ref = reference[static_cast<std::size_t>(rec * stride)];
            NodalFunction e_phi(rung.phi.size());
            NodalFunction e_mu(rung.mu.size());
            for (std::size_t i = 0; i < rung.phi.size(); ++i) {
                e_phi[i] = rung.phi[i] - ref.phi[i];
                e_mu[i] = rung.mu[i] - ref.mu[i];
            }
            h1_phi.push_back(norm_h1(m, k, e_phi));
            h1_mu.push_back(norm_h1(m, k, e_mu));
            r_err.push_back(rung.r - ref.r);
        }
        const auto phi_norms = composite_norms(h1_phi, r_err, dt);
        const auto mu_norms = composite_norms(h1_mu, r_err, dt);
        report.errors.push_back({phi_norms.sup_h1, mu_norms.sup_h1, phi_norms.sup_abs_r});
    }

    for (std::size_t i = 0; i + 1 < report.errors.size(); ++i) {
        report.rates.push_back(rates_between(report.errors[i], report.errors[i + 1]));
    }
    return report;
}

ConvergenceReport spatial_study(double dt_fixed, std::span<const int> n_ladder, int n_reference,
                                double T, const PotentialSpec& pot) {
    if (n_ladder.empty()) throw std::invalid_argument("spatial_study: empty ladder");
    for (std::size_t i = 0; i + 1 < n_ladder.size(); ++i) {
        if (n_ladder[i + 1] != 2 * n_ladder[i]) {
            throw std::invalid_argument("spatial_study: mesh ladder must refine by factors of 2");
        }
    }
    for (int n : n_ladder) {
        if (n < 1 || n_reference % n != 0) {
            throw std::invalid_argument("spatial_study: reference resolution " +
                                        std::to_string(n_reference) +
                                        " is not a multiple of rung resolution " + std::to_string(n));
        }
        int ratio = n_reference / n;
        while (ratio % 2 == 0) ratio /= 2;
        if (ratio != 1) {
            throw std::invalid_argument("spatial_study: reference/rung ratio must be a power of 2");
        }
    }
    const long steps = integer_ratio(T, dt_fixed, "spatial_study: final time");

    SchemeConfig init_config;
    init_config.potential = pot;

    // Reference trajectory on the fine mesh, captured at every record time.
    const Mesh ref_mesh = build_unit_square_mesh(n_reference);
    init_config.n = n_reference;
    const State ref_initial = initial_state(ref_mesh, init_config);
    const SimOperators ref_ops = build_operators(ref_mesh, dt_fixed);
    const auto captures = every_step(steps);
    const std::vector<State> reference =
        run_capturing(ref_ops, pot, ref_initial, steps, captures);

    ConvergenceReport report;
    report.kind = StudyKind::spatial;
    for (int n : n_ladder) report.ladder.push_back(1.0 / n);
    report.reference_param = 1.0 / n_reference;
    report.n_fixed = n_reference;
    report.dt_fixed = dt_fixed;
    report.T = T;

    for (int n : n_ladder) {
        const Mesh mesh = build_unit_square_mesh(n);
        const SparseOperator m = assemble_mass(mesh);
        const SparseOperator k = assemble_stiffness(mesh);
        init_config.n = n;
        const State initial = initial_state(mesh, init_config);
        const SimOperators ops = build_operators(mesh, dt_fixed);
        const auto states = run_capturing(ops, pot, initial, steps, captures);

        const int stride = n_reference / n;
        std::vector<double> h1_phi, h1_mu, r_err;
        for (long rec = 0; rec <= steps; ++rec) {
            const State& rung = states[static_cast<std::size_t>(rec)];
            const State& ref = reference[static_cast<std::size_t>(rec)];
            NodalFunction e_phi(rung.phi.size());
            NodalFunction e_mu(rung.mu.size());
            for (int j = 0; j <= n; ++j) {
                for (int i = 0; i <= n; ++i) {
                    const auto c = static_cast<std::size_t>(mesh.node_index(i, j));
                    const auto f = static_cast<std::size_t>(ref_mesh.node_index(i * stride, j * stride));
                    e_phi[c] = rung.phi[c] - ref.phi[f];
                    e_mu[c] = rung.mu[c] - ref.mu[f];
                }
            }
            h1_phi.push_back(norm_h1(m, k, e_phi));
            h1_mu.push_back(norm_h1(m, k, e_mu));
            r_err.push_back(rung.r - ref.r);
        }
        const auto phi_norms = composite_norms(h1_phi, r_err, dt_fixed);
        const auto mu_norms = composite_norms(h1_mu, r_err, dt_fixed);
        report.errors.push_back({phi_norms.sup_h1, mu_norms.sup_h1, phi_norms.sup_abs_r});
    }

    for (std::size_t i = 0; i + 1 < report.errors.size(); ++i) {
        report.rates.push_back(rates_between(report.errors[i], report.errors[i + 1]));
    }
    return report;
}

std::string report_csv(const ConvergenceReport& report) {
    std::string out = "param,e_phi,rate_phi,e_mu,rate_mu,e_r,rate_r\n";
    for (std::size_t i = 0; i < report.ladder.size(); ++i) {
        out += format_double("%.17g", report.ladder[i]);
        const auto& e = report.errors[i];
        const auto rate_field = [&](double rung_rate) -> std::string {
            if (i == 0) return "";
            if (std::isnan(rung_rate)) return "nan";
            return format_double("%.17g", rung_rate);
        };
        const ConvergenceReport::Rate prev =
            i == 0 ? ConvergenceReport::Rate{0, 0, 0} : report.rates[i - 1];
        out += "," + format_double("%.17g", e.e_phi) + "," + rate_field(prev.phi);
        out += "," + format_double("%.17g", e.e_mu) + "," + rate_field(prev.mu);
        out += "," + format_double("%.17g", e.e_r) + "," + rate_field(prev.r);
        out += "\n";
    }
    return out;
}

std::string report_table(const ConvergenceReport& report) {
    const char* param_name = report.kind == StudyKind::temporal ? "dt" : "h";
    char line[160];
    std::snprintf(line, sizeof(line), "%-12s %-12s %-7s %-12s %-7s %-12s %-7s\n", param_name,
                  "e_phi", "rate", "e_mu", "rate", "e_r", "rate");
    std::string out = line;
    for (std::size_t i = 0; i < report.ladder.size(); ++i) {
        const auto& e = report.errors[i];
        const auto rate_str = [&](double rung_rate) -> std::string {
            if (i == 0 || std::isnan(rung_rate)) return "--";
            return format_double("%.4f", rung_rate);
        };
        const ConvergenceReport::Rate prev =
            i == 0 ? ConvergenceReport::Rate{0, 0, 0} : report.rates[i - 1];
        std::snprintf(line, sizeof(line), "%-12.6g %-12.5e %-7s %-12.5e %-7s %-12.5e %-7s\n",
                      report.ladder[i], e.e_phi, rate_str(prev.phi).c_str(), e.e_mu,
                      rate_str(prev.mu).c_str(), e.e_r, rate_str(prev.r).c_str());
        out += line;
    }
    return out;
}

bool rates_within(const ConvergenceReport& report, double lo, double hi, double r_lo,
                  double r_hi) {
    for (const auto& rate : report.rates) {
        if (std::isnan(rate.phi) || rate.phi < lo || rate.phi > hi) return false;
        if (std::isnan(rate.mu) || rate.mu < lo || rate.mu > hi) return false;
        if (std::isnan(rate.r) || rate.r < r_lo || rate.r > r_hi) return false;
    }
    return true;
}

}  // namespace chsav

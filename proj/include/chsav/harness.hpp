// harness.hpp
// Convergence studies: ladders of dt or h run against a fine reference
// solution, with error norms and observed rates.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "chsav/potential.hpp"

namespace chsav {

enum class StudyKind { temporal, spatial };

struct ConvergenceReport {
    StudyKind kind = StudyKind::temporal;
    std::vector<double> ladder;  // dt values or h values, strictly halving

    struct Rung {
        double e_phi = 0.0;  // sup-in-time H1 error of phi
        double e_mu = 0.0;   // sup-in-time H1 error of mu
        double e_r = 0.0;    // sup-in-time |r - r_ref|
    };
    std::vector<Rung> errors;

    struct Rate {
        double phi, mu, r;  // NaN where a rate is undefined (zero error)
    };
    std::vector<Rate> rates;  // one shorter than the ladder

    // Reference parameters
    double reference_param = 0.0;  // dt_ref (temporal) or h_ref (spatial)
    int n_fixed = 0;               // mesh resolution (temporal) or reference resolution (spatial)
    double dt_fixed = 0.0;         // spatial studies only
    double T = 0.0;
};

// log2(e_coarse / e_fine); throws std::domain_error unless both are > 0.
double compute_rate(double e_coarse, double e_fine);

ConvergenceReport temporal_study(int n_fixed, std::span<const double> dt_ladder,
                                 double dt_reference, double T, const PotentialSpec& pot);

ConvergenceReport spatial_study(double dt_fixed, std::span<const int> n_ladder,
                                int n_reference, double T, const PotentialSpec& pot);

// CSV with header param,e_phi,rate_phi,e_mu,rate_mu,e_r,rate_r ("nan" for
// undefined rates, empty for the first rung).
std::string report_csv(const ConvergenceReport& report);

// Aligned plain-text table.
std::string report_table(const ConvergenceReport& report);

// True when every defined rate of phi and mu lies in [lo, hi] and every
// defined rate of r lies in [r_lo, r_hi].
bool rates_within(const ConvergenceReport& report, double lo, double hi,
                  double r_lo, double r_hi);

}  // namespace chsav

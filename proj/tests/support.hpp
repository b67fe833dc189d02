// Test-only oracles, independent of the library's assembly/solve paths:
// dense Gram matrices via barycentric evaluation at physical points with a
// degree-5 rule, dense partial-pivot LU, pointwise P1 evaluation, and the
// direct-substitution residuals of one scheme step.

#pragma once

#include <array>
#include <cstddef>
#include <random>
#include <vector>

#include "chsav/mesh.hpp"
#include "chsav/nodal_function.hpp"
#include "chsav/potential.hpp"
#include "chsav/sav.hpp"

namespace chsav::test {

// Barycentric coordinates of (x, y) in triangle `e`, solved from the affine
// system (not reusing element_geometry's gradient formulas).
std::array<double, 3> barycentric(const Mesh& mesh, int e, double x, double y);

// Dense Gram matrices: double loop over global basis pairs, 7-point
// degree-5 quadrature, hat functions evaluated at physical points.
std::vector<std::vector<double>> dense_mass_oracle(const Mesh& mesh);
std::vector<std::vector<double>> dense_stiffness_oracle(const Mesh& mesh);

// Dense LU with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b);

// P1 evaluation at an arbitrary point of the unit square (grid location by
// index arithmetic).
double eval_p1(const Mesh& mesh, const NodalFunction& v, double x, double y);

// Max-norm residuals of the coupled one-step system evaluated at
// (state, next): row1 = M phi' + dt K mu' - M phi, row2 = M mu' - K phi' -
// r' L_b, row3 = scalar r equation.
struct StepResiduals {
    double row_phi = 0.0;
    double row_mu = 0.0;
    double row_r = 0.0;
    double max() const;
};
StepResiduals step_residuals(const State& state, const State& next, const SimOperators& ops,
                             const PotentialSpec& pot);

}  // namespace chsav::test

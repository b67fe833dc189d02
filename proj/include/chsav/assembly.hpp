// assembly.hpp
// P1 finite element operators and vectors on unit-square meshes: mass and
// stiffness matrices, quadrature-weighted load vectors, L2 projection.

#pragma once

#include <functional>

#include "chsav/mesh.hpp"
#include "chsav/nodal_function.hpp"
#include "chsav/potential.hpp"
#include "chsav/sparse.hpp"

namespace chsav {

// M_ij = \int phi_i phi_j dx, assembled from the exact P1 local mass matrix.
SparseOperator assemble_mass(const Mesh& mesh);

// K_ij = \int grad(phi_i) . grad(phi_j) dx.
SparseOperator assemble_stiffness(const Mesh& mesh);

// Pointwise integrand evaluated at quadrature points: arguments are
// (x, y, phi_h(x, y)).
using PointwiseWeight = std::function<double(double, double, double)>;

// L_i = \int g(x, phi_h(x)) phi_i(x) dx with the degree-4 rule.
// Throws on non-finite g values, naming the offending element.
std::vector<double> assemble_weighted_load(const Mesh& mesh, const NodalFunction& phi,
                                           const PointwiseWeight& g);

// \int F(phi_h) dx with the same degree-4 rule (no C0 shift).
double potential_integral(const Mesh& mesh, const NodalFunction& phi,
                          const PotentialSpec& pot);

// L2-orthogonal projection onto the P1 space: solves M x = b with
// b_i = \int f phi_i dx.
NodalFunction l2_project(const Mesh& mesh, const std::function<double(double, double)>& f,
                         double tol = 1e-14);

}  // namespace chsav

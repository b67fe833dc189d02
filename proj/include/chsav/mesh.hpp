// mesh.hpp
// Uniform P1 triangulations of the unit square [0,1]^2.

#pragma once

#include <array>
#include <vector>

namespace chsav {

// Structured triangular mesh: (n+1)^2 nodes at (i/n, j/n), node index
// j*(n+1)+i (row-major in j), every cell split along the bottom-left to
// top-right diagonal. The fixed diagonal makes mesh(n) nodes an exact
// subset of mesh(2n) nodes, which the convergence harness relies on.
struct Mesh {
    int resolution = 0;  // cells per side
    double h = 0.0;      // 1/resolution
    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise

    int node_count() const { return static_cast<int>(nodes.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }
    int node_index(int i, int j) const { return j * (resolution + 1) + i; }
};

Mesh build_unit_square_mesh(int n);

struct ElementGeometry {
    double area = 0.0;
    std::array<std::array<double, 2>, 3> basis_gradients{};  // constant per element
};

ElementGeometry element_geometry(const Mesh& mesh, int element);

// True when every node of `coarse` coincides with a node of `fine`
// (fine.resolution an integer multiple of coarse.resolution).
bool is_nested_refinement(const Mesh& coarse, const Mesh& fine);

}  // namespace chsav

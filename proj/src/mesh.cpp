#include "chsav/mesh.hpp"

#include <stdexcept>
#include <string>

namespace chsav {

Mesh build_unit_square_mesh(int n) {
    if (n < 1) {
        throw std::invalid_argument("build_unit_square_mesh: resolution must be >= 1, got " +
                                    std::to_string(n));
    }

    Mesh mesh;
    mesh.resolution = n;
    mesh.h = 1.0 / n;

    mesh.nodes.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            mesh.nodes.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
        }
    }

    // Each cell split along the bottom-left to top-right diagonal; both
    // triangles counterclockwise.
    mesh.triangles.reserve(static_cast<std::size_t>(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int a = mesh.node_index(i, j);
            const int b = mesh.node_index(i + 1, j);
            const int c = mesh.node_index(i + 1, j + 1);
            const int d = mesh.node_index(i, j + 1);
            mesh.triangles.push_back({a, b, c});
            mesh.triangles.push_back({a, c, d});
        }
    }
    return mesh;
}

ElementGeometry element_geometry(const Mesh& mesh, int element) {
    if (element < 0 || element >= mesh.triangle_count()) {
        throw std::out_of_range("element_geometry: element " + std::to_string(element) +
                                " out of range [0, " + std::to_string(mesh.triangle_count()) + ")");
    }
    const auto& tri = mesh.triangles[static_cast<std::size_t>(element)];
    const auto& p0 = mesh.nodes[static_cast<std::size_t>(tri[0])];
    const auto& p1 = mesh.nodes[static_cast<std::size_t>(tri[1])];
    const auto& p2 = mesh.nodes[static_cast<std::size_t>(tri[2])];

    const double two_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    if (!(two_area > 0.0)) {
        throw std::runtime_error("element_geometry: nonpositive area in element " +
                                 std::to_string(element));
    }

    ElementGeometry geom;
    geom.area = 0.5 * two_area;
    geom.basis_gradients = {{
        {(p1[1] - p2[1]) / two_area, (p2[0] - p1[0]) / two_area},
        {(p2[1] - p0[1]) / two_area, (p0[0] - p2[0]) / two_area},
        {(p0[1] - p1[1]) / two_area, (p1[0] - p0[0]) / two_area},
    }};
    return geom;
}

bool is_nested_refinement(const Mesh& coarse, const Mesh& fine) {
    if (coarse.resolution < 1 || fine.resolution < 1) return false;
    return fine.resolution % coarse.resolution == 0;
}

}  // namespace chsav

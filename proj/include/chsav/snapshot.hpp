#pragma once

#include <filesystem>

#include "chsav/mesh.hpp"
#include "chsav/nodal_function.hpp"

namespace chsav {

enum class SnapshotFormat { vtk, csv };

// vtk: legacy ASCII unstructured grid (points z=0, triangle cells, point
// scalars named "phi"). csv: header x,y,phi and one row per node in node
// order. Both bit-reproducible for identical inputs.
void write_snapshot(const Mesh& mesh, const NodalFunction& phi,
                    const std::filesystem::path& path, SnapshotFormat format);

}  // namespace chsav

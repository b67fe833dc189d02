#include "chsav/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace chsav {

namespace {

std::string g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_stream(const std::ofstream& out, const std::filesystem::path& path) {
    if (!out) throw std::runtime_error("write_snapshot: cannot write '" + path.string() + "'");
}

}  // namespace

void write_snapshot(const Mesh& mesh, const NodalFunction& phi,
                    const std::filesystem::path& path, SnapshotFormat format) {
    if (phi.size() != static_cast<std::size_t>(mesh.node_count())) {
        throw std::invalid_argument("write_snapshot: field size does not match mesh");
    }
    std::ofstream out(path);
    check_stream(out, path);

    if (format == SnapshotFormat::csv) {
        out << "x,y,phi\n";
        for (int i = 0; i < mesh.node_count(); ++i) {
            const auto& p = mesh.nodes[static_cast<std::size_t>(i)];
            out << g17(p[0]) << ',' << g17(p[1]) << ',' << g17(phi[static_cast<std::size_t>(i)])
                << '\n';
        }
    } else {
        // Legacy ASCII unstructured grid; the 2D field is embedded at z = 0,
        // cell type 5 is the VTK triangle.
        out << "# vtk DataFile Version 2.0\n";
        out << "chsav phase field snapshot\n";
        out << "ASCII\n";
        out << "DATASET UNSTRUCTURED_GRID\n";
        out << "POINTS " << mesh.node_count() << " double\n";
        for (const auto& p : mesh.nodes) {
            out << g17(p[0]) << ' ' << g17(p[1]) << " 0\n";
        }
        out << "CELLS " << mesh.triangle_count() << ' ' << 4 * mesh.triangle_count() << '\n';
        for (const auto& tri : mesh.triangles) {
            out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
        }
        out << "CELL_TYPES " << mesh.triangle_count() << '\n';
        for (int e = 0; e < mesh.triangle_count(); ++e) out << "5\n";
        out << "POINT_DATA " << mesh.node_count() << '\n';
        out << "SCALARS phi double 1\n";
        out << "LOOKUP_TABLE default\n";
        for (std::size_t i = 0; i < phi.size(); ++i) out << g17(phi[i]) << '\n';
    }

    out.flush();
    check_stream(out, path);
}

}  // namespace chsav

#include "lfa/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "lfa/util.hpp"

namespace lfa {

void ExperimentGeometry::validate() const {
    auto pos = [](double v, const char* name) {
        if (!(v > 0) || !std::isfinite(v))
            throw std::invalid_argument(std::string("geometry.") + name +
                                        " must be strictly positive");
    };
    pos(R, "R");
    pos(H, "H");
    pos(z_f, "z_f");
    pos(t_f, "t_f");
    pos(T, "T");
    pos(L, "L");
    if (z_f > H) throw std::invalid_argument("geometry.z_f must not exceed H");
    if (t_f > T) throw std::invalid_argument("geometry.t_f must not exceed T");
    if (L > R) throw std::invalid_argument("geometry.L must not exceed R");
}

namespace {

// Uniform node coordinates on [0, len] with the interior node nearest to
// `cut` moved onto it. Skipped when the grid is too coarse to have one.
std::vector<double> grid_with_snap(double len, int n_cells, double cut) {
    std::vector<double> nodes(n_cells + 1);
    const double d = len / n_cells;
    for (int i = 0; i <= n_cells; ++i) nodes[i] = i * d;
    nodes[n_cells] = len;
    if (n_cells >= 2 && cut > 0 && cut < len) {
        int i = static_cast<int>(std::lround(cut / d));
        i = std::clamp(i, 1, n_cells - 1);
        double moved = cut;
        if (moved > nodes[i - 1] && moved < nodes[i + 1]) nodes[i] = moved;
    }
    return nodes;
}

}  // namespace

Mesh build_rect_mesh(const ExperimentGeometry& geometry, double h_target) {
    geometry.validate();
    if (!(h_target > 0) || !std::isfinite(h_target))
        throw std::invalid_argument("h_target must be positive and finite");

    const int nr = std::max(1, static_cast<int>(std::ceil(geometry.R / h_target)));
    const int nz = std::max(1, static_cast<int>(std::ceil(geometry.H / h_target)));

    const std::vector<double> rs = grid_with_snap(geometry.R, nr, geometry.L);
    const std::vector<double> zs = grid_with_snap(geometry.H, nz, geometry.z_f);

    Mesh mesh;
    mesh.vertices.reserve((nr + 1) * (nz + 1));
    for (int j = 0; j <= nz; ++j)
        for (int i = 0; i <= nr; ++i)
            mesh.vertices.push_back({rs[i], zs[j]});

    auto vid = [nr](int i, int j) { return j * (nr + 1) + i; };

    mesh.triangles.reserve(2 * nr * nz);
    for (int j = 0; j < nz; ++j) {
        for (int i = 0; i < nr; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    }

    for (int j = 0; j < nz; ++j) {
        mesh.boundary_edges.push_back({vid(0, j), vid(0, j + 1), BoundaryTag::Axis});
        mesh.boundary_edges.push_back({vid(nr, j), vid(nr, j + 1), BoundaryTag::Outer});
    }
    for (int i = 0; i < nr; ++i) {
        mesh.boundary_edges.push_back({vid(i, 0), vid(i + 1, 0), BoundaryTag::Face});
        mesh.boundary_edges.push_back({vid(i, nz), vid(i + 1, nz), BoundaryTag::Face});
    }

    double h = 0;
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const auto& p = mesh.vertices[tri[e]];
            const auto& q = mesh.vertices[tri[(e + 1) % 3]];
            h = std::max(h, std::hypot(q[0] - p[0], q[1] - p[1]));
        }
    }
    mesh.h = h;
    return mesh;
}

void write_mesh_csv(const Mesh& mesh, const std::string& vertex_path,
                    const std::string& triangle_path) {
    std::ofstream vf(vertex_path);
    if (!vf) throw std::runtime_error("cannot open " + vertex_path);
    vf << "index,r,z\n";
    for (int i = 0; i < mesh.n_vertices(); ++i)
        vf << i << ',' << format_double(mesh.vertices[i][0]) << ','
           << format_double(mesh.vertices[i][1]) << '\n';

    std::ofstream tf(triangle_path);
    if (!tf) throw std::runtime_error("cannot open " + triangle_path);
    tf << "index,v0,v1,v2\n";
    for (int t = 0; t < mesh.n_triangles(); ++t)
        tf << t << ',' << mesh.triangles[t][0] << ',' << mesh.triangles[t][1]
           << ',' << mesh.triangles[t][2] << '\n';
}

}  // namespace lfa

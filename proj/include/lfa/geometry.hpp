#pragma once

#include <array>
#include <string>
#include <vector>

namespace lfa {

// Geometry of the cylindrical sample and the observation window.
// All lengths in metres, times in seconds.
struct ExperimentGeometry {
    double R = 0;    // sample radius
    double H = 0;    // sample height
    double z_f = 0;  // laser penetration depth
    double t_f = 0;  // flash duration
    double T = 0;    // experiment duration
    double L = 0;    // observation-disc radius on the top face

    void validate() const;
};

enum class BoundaryTag { Axis, Outer, Face };

struct BoundaryEdge {
    int a = 0;
    int b = 0;
    BoundaryTag tag = BoundaryTag::Face;
};

// Conforming triangulation of the half-section (0,R) x (0,H).
struct Mesh {
    std::vector<std::array<double, 2>> vertices;  // (r, z)
    std::vector<std::array<int, 3>> triangles;    // CCW vertex indices
    std::vector<BoundaryEdge> boundary_edges;
    double h = 0;  // longest edge

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_triangles() const { return static_cast<int>(triangles.size()); }
};

// Structured grid triangulation, each cell split lower-left to upper-right.
// Cell counts in r and z are chosen independently so both directions resolve
// h_target. A grid line is snapped to z = z_f and r = L when possible so the
// source and observation cutoffs align with element boundaries.
Mesh build_rect_mesh(const ExperimentGeometry& geometry, double h_target);

void write_mesh_csv(const Mesh& mesh, const std::string& vertex_path,
                    const std::string& triangle_path);

}  // namespace lfa

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <map>
#include <set>

#include "lfa/geometry.hpp"

using namespace lfa;

namespace {

ExperimentGeometry unit_square() {
    ExperimentGeometry g;
    g.R = 1.0;
    g.H = 1.0;
    g.z_f = 0.25;
    g.t_f = 1.0;
    g.T = 1.0;
    g.L = 0.5;
    return g;
}

ExperimentGeometry copper_geometry() {
    ExperimentGeometry g;
    g.R = 1.240e-2;
    g.H = 2.037e-3;
    g.z_f = 1.273e-4;
    g.t_f = 4.000e-4;
    g.T = 4.000e-2;
    g.L = 6.2e-3;
    return g;
}

double triangle_area(const Mesh& m, int t) {
    const auto& a = m.vertices[m.triangles[t][0]];
    const auto& b = m.vertices[m.triangles[t][1]];
    const auto& c = m.vertices[m.triangles[t][2]];
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]));
}

}  // namespace

TEST_CASE("minimal 1x1 grid") {
    auto g = unit_square();
    g.L = 1.0;  // no interior line to snap onto
    g.z_f = 1.0;
    const Mesh m = build_rect_mesh(g, 1.0);
    CHECK(m.n_vertices() == 4);
    CHECK(m.n_triangles() == 2);
}

TEST_CASE("2x2 grid counts") {
    auto g = unit_square();
    const Mesh m = build_rect_mesh(g, 0.5);
    CHECK(m.n_vertices() == 9);
    CHECK(m.n_triangles() == 8);
}

TEST_CASE("triangle areas sum to R*H and orientation is positive") {
    const Mesh m = build_rect_mesh(copper_geometry(), 3e-4);
    double total = 0;
    for (int t = 0; t < m.n_triangles(); ++t) {
        const double a = triangle_area(m, t);
        CHECK(a > 0);
        total += a;
    }
    CHECK(total == doctest::Approx(1.240e-2 * 2.037e-3).epsilon(1e-12));
}

TEST_CASE("edge sharing: interior edges twice, boundary once") {
    const Mesh m = build_rect_mesh(unit_square(), 0.34);
    std::map<std::pair<int, int>, int> count;
    for (const auto& tri : m.triangles) {
        for (int e = 0; e < 3; ++e) {
            int a = tri[e], b = tri[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++count[{a, b}];
        }
    }
    std::set<std::pair<int, int>> boundary;
    for (const auto& be : m.boundary_edges) {
        int a = be.a, b = be.b;
        if (a > b) std::swap(a, b);
        boundary.insert({a, b});
    }
    for (const auto& [edge, c] : count) {
        if (boundary.count(edge)) {
            CHECK(c == 1);
        } else {
            CHECK(c == 2);
        }
    }
}

TEST_CASE("boundary tags partition the boundary") {
    const auto g = copper_geometry();
    const Mesh m = build_rect_mesh(g, 3e-4);
    int axis = 0, outer = 0, face = 0;
    for (const auto& be : m.boundary_edges) {
        const auto& pa = m.vertices[be.a];
        const auto& pb = m.vertices[be.b];
        switch (be.tag) {
            case BoundaryTag::Axis:
                CHECK(pa[0] == 0.0);
                CHECK(pb[0] == 0.0);
                ++axis;
                break;
            case BoundaryTag::Outer:
                CHECK(pa[0] == doctest::Approx(g.R));
                CHECK(pb[0] == doctest::Approx(g.R));
                ++outer;
                break;
            case BoundaryTag::Face:
                CHECK(pa[1] == pb[1]);
                CHECK((pa[1] == 0.0 || pa[1] == doctest::Approx(g.H)));
                ++face;
                break;
        }
    }
    CHECK(axis > 0);
    CHECK(outer > 0);
    CHECK(face > 0);
}

TEST_CASE("snapping puts grid lines on z_f and L") {
    const auto g = copper_geometry();
    const Mesh m = build_rect_mesh(g, 3e-4);
    bool has_zf = false, has_L = false;
    for (const auto& v : m.vertices) {
        if (v[1] == g.z_f) has_zf = true;
        if (v[0] == g.L) has_L = true;
    }
    CHECK(has_zf);
    CHECK(has_L);
}

TEST_CASE("isotropic cells at h_target 3e-5 give the published element size") {
    const Mesh m = build_rect_mesh(copper_geometry(), 3e-5);
    CHECK(m.h == doctest::Approx(4.24e-5).epsilon(0.02));
}

TEST_CASE("invalid h_target rejected") {
    CHECK_THROWS_AS(build_rect_mesh(unit_square(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rect_mesh(unit_square(), -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rect_mesh(unit_square(), std::nan("")), std::invalid_argument);
}

TEST_CASE("geometry invariants enforced") {
    auto g = unit_square();
    g.z_f = 2.0;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g = unit_square();
    g.L = 1.5;
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
}

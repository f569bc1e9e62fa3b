#include "lfa/fem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lfa {

void MaterialProperties::validate() const {
    if (!(rho > 0)) throw std::invalid_argument("material.rho must be positive");
    if (!(c_p > 0)) throw std::invalid_argument("material.c_p must be positive");
    if (!(T_a > 0)) throw std::invalid_argument("material.T_a must be positive");
    if (!(kappa >= 0)) throw std::invalid_argument("material.kappa must be non-negative");
}

LaserProfile LaserProfile::gaussian(double r_f) {
    if (!(r_f > 0)) throw std::invalid_argument("laser.r_f must be positive");
    return {Kind::Gaussian, r_f};
}

double LaserProfile::chi(double r) const {
    if (kind == Kind::Uniform) return 1.0;
    return std::exp(-r * r / (2.0 * r_f * r_f));
}

namespace {

using Point = std::array<double, 2>;

double signed_area2(const Point& a, const Point& b, const Point& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
}

// Barycentric coordinates of x in triangle (p0,p1,p2).
std::array<double, 3> barycentric(const Point& p0, const Point& p1, const Point& p2,
                                  const Point& x) {
    const double d = signed_area2(p0, p1, p2);
    const double l0 = signed_area2(x, p1, p2) / d;
    const double l1 = signed_area2(p0, x, p2) / d;
    return {l0, l1, 1.0 - l0 - l1};
}

// Clip a convex polygon against the half-plane z <= z_cut.
std::vector<Point> clip_below(const std::vector<Point>& poly, double z_cut) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % n];
        const bool pin = p[1] <= z_cut;
        const bool qin = q[1] <= z_cut;
        if (pin) out.push_back(p);
        if (pin != qin) {
            const double t = (z_cut - p[1]) / (q[1] - p[1]);
            out.push_back({p[0] + t * (q[0] - p[0]), z_cut});
        }
    }
    return out;
}

// 2-point Gauss on [a, b].
struct Gauss2 {
    std::array<double, 2> x, w;
    Gauss2(double a, double b) {
        const double m = 0.5 * (a + b), r = 0.5 * (b - a);
        const double g = r / std::sqrt(3.0);
        x = {m - g, m + g};
        w = {r, r};
    }
};

}  // namespace

FemOperators assemble_operators(const Mesh& mesh, const ExperimentGeometry& geometry,
                                const MaterialProperties& material,
                                const LaserProfile& profile) {
    geometry.validate();
    material.validate();
    const double tol = 1e-12 * std::max(geometry.R, geometry.H);
    for (const auto& v : mesh.vertices) {
        if (v[0] < -tol || v[0] > geometry.R + tol || v[1] < -tol ||
            v[1] > geometry.H + tol)
            throw std::invalid_argument("mesh vertex outside [0,R]x[0,H]");
    }

    const int n = mesh.n_vertices();
    FemOperators ops;
    ops.n_h = n;
    ops.b = Eigen::VectorXd::Zero(n);
    ops.f = Eigen::VectorXd::Zero(n);
    ops.w = Eigen::VectorXd::Zero(n);

    std::vector<Eigen::Triplet<double>> tm, tk, tmb;
    tm.reserve(9 * mesh.n_triangles());
    tk.reserve(9 * mesh.n_triangles());

    for (const auto& tri : mesh.triangles) {
        const Point p0 = mesh.vertices[tri[0]];
        const Point p1 = mesh.vertices[tri[1]];
        const Point p2 = mesh.vertices[tri[2]];
        const double area = 0.5 * signed_area2(p0, p1, p2);
        if (!(area > 0)) throw std::invalid_argument("non-positive triangle area");

        // P1 gradients (constant per element).
        const double inv2A = 1.0 / (2.0 * area);
        const std::array<std::array<double, 2>, 3> grad = {{
            {(p1[1] - p2[1]) * inv2A, (p2[0] - p1[0]) * inv2A},
            {(p2[1] - p0[1]) * inv2A, (p0[0] - p2[0]) * inv2A},
            {(p0[1] - p1[1]) * inv2A, (p1[0] - p0[0]) * inv2A},
        }};

        const double r_bar = (p0[0] + p1[0] + p2[0]) / 3.0;
        const std::array<Point, 3> mid = {{
            {0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1])},
            {0.5 * (p1[0] + p2[0]), 0.5 * (p1[1] + p2[1])},
            {0.5 * (p2[0] + p0[0]), 0.5 * (p2[1] + p0[1])},
        }};
        // phi values at edge midpoints: phi_i = 1/2 on the two adjacent edges.
        const std::array<std::array<double, 3>, 3> phi_mid = {{
            {0.5, 0.0, 0.5},  // vertex 0 on edges (0,1) and (2,0)
            {0.5, 0.5, 0.0},
            {0.0, 0.5, 0.5},
        }};

        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double mij = 0;
                for (int q = 0; q < 3; ++q)
                    mij += phi_mid[i][q] * phi_mid[j][q] * mid[q][0];
                mij *= area / 3.0;
                tm.emplace_back(tri[i], tri[j], mij);

                const double kij =
                    (grad[i][0] * grad[j][0] + grad[i][1] * grad[j][1]) * area * r_bar;
                tk.emplace_back(tri[i], tri[j], kij);
            }
        }

        // Source load over the part of the element with z <= z_f.
        std::vector<Point> poly = clip_below({p0, p1, p2}, geometry.z_f);
        if (poly.size() >= 3) {
            for (std::size_t s = 1; s + 1 < poly.size(); ++s) {
                const Point& a = poly[0];
                const Point& b = poly[s];
                const Point& c = poly[s + 1];
                const double sub_area = 0.5 * signed_area2(a, b, c);
                if (sub_area <= 0) continue;
                const std::array<Point, 3> qs = {{
                    {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])},
                    {0.5 * (b[0] + c[0]), 0.5 * (b[1] + c[1])},
                    {0.5 * (c[0] + a[0]), 0.5 * (c[1] + a[1])},
                }};
                for (const auto& q : qs) {
                    const auto lam = barycentric(p0, p1, p2, q);
                    const double wq = sub_area / 3.0 * profile.chi(q[0]) * q[0];
                    for (int i = 0; i < 3; ++i) ops.f[tri[i]] += wq * lam[i];
                }
            }
        }
    }

    // Face boundary terms and the disc average.
    const double z_top = geometry.H;
    for (const auto& edge : mesh.boundary_edges) {
        if (edge.tag != BoundaryTag::Face) continue;
        const Point pa = mesh.vertices[edge.a];
        const Point pb = mesh.vertices[edge.b];
        const double r0 = std::min(pa[0], pb[0]);
        const double r1 = std::max(pa[0], pb[0]);
        const int ia = (pa[0] <= pb[0]) ? edge.a : edge.b;
        const int ib = (pa[0] <= pb[0]) ? edge.b : edge.a;
        const double len = r1 - r0;
        if (!(len > 0)) continue;

        auto phi_at = [&](double r) {
            const double t = (r - r0) / len;
            return std::array<double, 2>{1.0 - t, t};
        };

        Gauss2 g(r0, r1);
        std::array<std::array<double, 2>, 2> mb = {{{0, 0}, {0, 0}}};
        std::array<double, 2> bl = {0, 0};
        for (int q = 0; q < 2; ++q) {
            const auto ph = phi_at(g.x[q]);
            const double wr = g.w[q] * g.x[q];
            for (int i = 0; i < 2; ++i) {
                bl[i] += wr * ph[i];
                for (int j = 0; j < 2; ++j) mb[i][j] += wr * ph[i] * ph[j];
            }
        }
        const std::array<int, 2> idx = {ia, ib};
        for (int i = 0; i < 2; ++i) {
            ops.b[idx[i]] += bl[i];
            for (int j = 0; j < 2; ++j) tmb.emplace_back(idx[i], idx[j], mb[i][j]);
        }

        // Disc average: top-face edges, integrated exactly over r <= L.
        const bool on_top = std::abs(pa[1] - z_top) <= tol && std::abs(pb[1] - z_top) <= tol;
        if (on_top && r0 < geometry.L) {
            const double rc = std::min(r1, geometry.L);
            Gauss2 gc(r0, rc);
            for (int q = 0; q < 2; ++q) {
                const auto ph = phi_at(gc.x[q]);
                const double wr = gc.w[q] * gc.x[q] * 2.0 / (geometry.L * geometry.L);
                ops.w[ia] += wr * ph[0];
                ops.w[ib] += wr * ph[1];
            }
        }
    }

    ops.M.resize(n, n);
    ops.K.resize(n, n);
    ops.Mb.resize(n, n);
    ops.M.setFromTriplets(tm.begin(), tm.end());
    ops.K.setFromTriplets(tk.begin(), tk.end());
    ops.Mb.setFromTriplets(tmb.begin(), tmb.end());
    return ops;
}

}  // namespace lfa

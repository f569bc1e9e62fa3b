#include "lfa/pce.hpp"

#include <cmath>
#include <stdexcept>

namespace lfa {

double legendre_coupling(int n) {
    return std::sqrt(3.0) * n / std::sqrt((2.0 * n - 1.0) * (2.0 * n + 1.0));
}

PceBasis build_basis(int degree) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");

    PceBasis basis;
    basis.degree = degree;
    for (int d = 0; d <= degree; ++d)
        for (int a1 = d; a1 >= 0; --a1) basis.indices.push_back({a1, d - a1});
    basis.n_k = static_cast<int>(basis.indices.size());

    // Coupling matrices: (G_m)_js nonzero iff the indices differ by one in
    // component m and agree in the other; the entry is c_max(a_m, b_m).
    std::vector<Eigen::Triplet<double>> t1, t2;
    for (int j = 0; j < basis.n_k; ++j) {
        for (int s = 0; s < basis.n_k; ++s) {
            const auto& a = basis.indices[j];
            const auto& b = basis.indices[s];
            if (a[1] == b[1] && std::abs(a[0] - b[0]) == 1)
                t1.emplace_back(j, s, legendre_coupling(std::max(a[0], b[0])));
            if (a[0] == b[0] && std::abs(a[1] - b[1]) == 1)
                t2.emplace_back(j, s, legendre_coupling(std::max(a[1], b[1])));
        }
    }
    basis.G1.resize(basis.n_k, basis.n_k);
    basis.G2.resize(basis.n_k, basis.n_k);
    basis.G1.setFromTriplets(t1.begin(), t1.end());
    basis.G2.setFromTriplets(t2.begin(), t2.end());
    return basis;
}

namespace {

// Univariate orthonormal values p_0..p_deg at y via the three-term recurrence.
void univariate_values(int deg, double y, double* out) {
    out[0] = 1.0;
    if (deg == 0) return;
    out[1] = y;  // c_1 = 1
    for (int n = 1; n < deg; ++n)
        out[n + 1] = (y * out[n] - legendre_coupling(n) * out[n - 1]) /
                     legendre_coupling(n + 1);
}

}  // namespace

Eigen::VectorXd eval_basis(const PceBasis& basis, double y1, double y2) {
    if (!std::isfinite(y1) || !std::isfinite(y2))
        throw std::invalid_argument("basis evaluation point must be finite");

    std::vector<double> p1(basis.degree + 1), p2(basis.degree + 1);
    univariate_values(basis.degree, y1, p1.data());
    univariate_values(basis.degree, y2, p2.data());

    Eigen::VectorXd vals(basis.n_k);
    for (int j = 0; j < basis.n_k; ++j)
        vals[j] = p1[basis.indices[j][0]] * p2[basis.indices[j][1]];
    return vals;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double a, double b) {
    if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
    Eigen::VectorXd x(n), w(n);
    // Newton iteration on the standard Legendre polynomial P_n over [-1, 1].
    for (int i = 0; i < n; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = mid + half * x[i];
        w[i] *= half;
    }
    return {x, w};
}

}  // namespace lfa

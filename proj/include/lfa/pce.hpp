#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace lfa {

// Orthonormal Legendre basis of total degree <= k in two parameters on
// Gamma = [-sqrt(3), sqrt(3)]^2 with uniform density (2*sqrt(3))^-2.
// Multi-indices are ordered by total degree, then lexicographically;
// index 0 is (0,0).
struct PceBasis {
    int degree = 0;
    int n_k = 0;
    std::vector<std::array<int, 2>> indices;
    Eigen::SparseMatrix<double> G1, G2;  // (G_m)_js = <y_m Psi_j Psi_s>
};

PceBasis build_basis(int degree);

Eigen::VectorXd eval_basis(const PceBasis& basis, double y1, double y2);

// Recurrence coefficient c_n in y p_n = c_{n+1} p_{n+1} + c_n p_{n-1} for the
// univariate orthonormal factors.
double legendre_coupling(int n);

// Gauss-Legendre nodes and weights on [a, b].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n, double a, double b);

}  // namespace lfa

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "lfa/fem.hpp"
#include "lfa/geometry.hpp"
#include "lfa/pce.hpp"

namespace lfa {

struct DiscretizationParams {
    int n_t = 0;     // implicit Euler steps
    double tau = 0;  // step size, T / n_t
    int degree = 0;  // polynomial degree of the parametric space

    void validate() const;
};

// Affine parameter box: lambda = mu_lambda + nu_lambda*y1, I = mu_I + nu_I*y2
// with y uniform on [-sqrt(3), sqrt(3)].
struct SurrogateBox {
    double mu_lambda = 0, nu_lambda = 0;
    double mu_I = 0, nu_I = 0;

    static SurrogateBox from_bounds(double lambda_min, double lambda_max,
                                    double I_min, double I_max);
    double lambda_min() const;
    double lambda_max() const;
    double I_min() const;
    double I_max() const;
    bool contains(double lambda, double I) const;
    void validate() const;
};

struct Thermogram {
    Eigen::VectorXd times;  // s, equally spaced from 0 to T
    Eigen::VectorXd temps;  // K
};

// Time-indexed polynomial chaos coefficients of the observed disc average:
// B(n, j) = w . u_j(., t_n). A thermogram at y in Gamma is B * Psi(y).
struct SgfemSurrogate {
    PceBasis basis;
    SurrogateBox box;
    DiscretizationParams disc;
    Eigen::VectorXd times;
    Eigen::MatrixXd B;
    std::uint64_t input_hash = 0;
    int n_h = 0;
};

Thermogram plain_solve(const FemOperators& ops, const MaterialProperties& material,
                       const ExperimentGeometry& geometry,
                       const DiscretizationParams& disc, double lambda, double I,
                       int n_d);

SgfemSurrogate sgfem_solve(const FemOperators& ops, const MaterialProperties& material,
                           const ExperimentGeometry& geometry, const PceBasis& basis,
                           const SurrogateBox& box, const DiscretizationParams& disc,
                           const Eigen::VectorXd& measurement_times);

// O(n_d * n_k) evaluation; throws if y is outside Gamma (callers fall back to
// a plain solve).
Thermogram evaluate_surrogate(const SgfemSurrogate& surrogate, double y1, double y2);

bool in_parameter_domain(double y1, double y2);

}  // namespace lfa

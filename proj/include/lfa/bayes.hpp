#pragma once

#include <utility>

#include <Eigen/Dense>

#include "lfa/solvers.hpp"

namespace lfa {

struct PriorSpec {
    double m_lambda = 0;      // log-space mean for ln(lambda)
    double s_lambda = 0;      // log-space sd
    double alpha_sigma = 0;   // inverse-gamma shape for sigma^2
    double beta_sigma = 0;    // inverse-gamma scale

    void validate() const;
};

struct Theta {
    double theta1 = 0;  // ln(lambda)
    double theta2 = 0;  // ln(I)
};

// Moment matching: (m, s) of the lognormal with mean mu and sd sigma.
std::pair<double, double> lognormal_hyperparams(double mu, double sigma);

// Unnormalized log prior on theta (Gaussian in theta1, exp(theta2) in theta2).
double log_prior(const Theta& theta, const PriorSpec& prior);

// sigma^2-marginalized log likelihood: multivariate t with nu = 2*alpha_sigma
// and isotropic shape (beta_sigma / alpha_sigma) * I.
double log_marginal_likelihood(const Eigen::VectorXd& d, const Eigen::VectorXd& g,
                               const PriorSpec& prior);

// ||d - g||^2 / (2 sigma^2), kept for conjugacy checks.
double potential(const Eigen::VectorXd& d, const Eigen::VectorXd& g, double sigma2);

std::pair<double, double> zeta(const SurrogateBox& box, double y1, double y2);
std::pair<double, double> zeta_inv(const SurrogateBox& box, double lambda, double I);

// Everything needed to evaluate the posterior: the surrogate for in-box
// proposals and the plain-solve fallback for the rest.
struct PosteriorContext {
    const SgfemSurrogate* surrogate = nullptr;
    const FemOperators* ops = nullptr;
    MaterialProperties material;
    ExperimentGeometry geometry;
    DiscretizationParams disc;  // fallback discretization (matches surrogate)
    PriorSpec prior;
    Eigen::VectorXd data;
    double theta2_bound = 80.0;  // abort guard for the improper intensity prior
};

struct TargetEval {
    double log_density = 0;
    bool used_surrogate = false;
};

TargetEval log_target(const Theta& theta, const PosteriorContext& ctx);

}  // namespace lfa

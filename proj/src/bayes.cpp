#include "lfa/bayes.hpp"

#include <cmath>
#include <stdexcept>

namespace lfa {

void PriorSpec::validate() const {
    if (!(s_lambda > 0)) throw std::invalid_argument("prior.s_lambda must be positive");
    if (!(alpha_sigma > 1))
        throw std::invalid_argument("prior.alpha_sigma must exceed 1");
    if (!(beta_sigma > 0)) throw std::invalid_argument("prior.beta_sigma must be positive");
}

std::pair<double, double> lognormal_hyperparams(double mu, double sigma) {
    if (!(mu > 0) || !(sigma > 0))
        throw std::invalid_argument("lognormal moments must be positive");
    const double s2 = std::log1p(sigma * sigma / (mu * mu));
    return {std::log(mu) - 0.5 * s2, std::sqrt(s2)};
}

double log_prior(const Theta& theta, const PriorSpec& prior) {
    const double z = theta.theta1 - prior.m_lambda;
    return -0.5 * z * z / (prior.s_lambda * prior.s_lambda) + theta.theta2;
}

double log_marginal_likelihood(const Eigen::VectorXd& d, const Eigen::VectorXd& g,
                               const PriorSpec& prior) {
    if (d.size() != g.size())
        throw std::invalid_argument("data and model thermograms differ in length");
    const double n = static_cast<double>(d.size());
    const double nu = 2.0 * prior.alpha_sigma;
    const double s2 = prior.beta_sigma / prior.alpha_sigma;
    const double r2 = (d - g).squaredNorm();
    return std::lgamma(0.5 * (nu + n)) - std::lgamma(0.5 * nu) -
           0.5 * n * std::log(nu * M_PI * s2) -
           0.5 * (nu + n) * std::log1p(r2 / (nu * s2));
}

double potential(const Eigen::VectorXd& d, const Eigen::VectorXd& g, double sigma2) {
    if (d.size() != g.size())
        throw std::invalid_argument("data and model thermograms differ in length");
    if (!(sigma2 > 0)) throw std::invalid_argument("sigma2 must be positive");
    return (d - g).squaredNorm() / (2.0 * sigma2);
}

std::pair<double, double> zeta(const SurrogateBox& box, double y1, double y2) {
    return {box.mu_lambda + box.nu_lambda * y1, box.mu_I + box.nu_I * y2};
}

std::pair<double, double> zeta_inv(const SurrogateBox& box, double lambda, double I) {
    return {(lambda - box.mu_lambda) / box.nu_lambda, (I - box.mu_I) / box.nu_I};
}

TargetEval log_target(const Theta& theta, const PosteriorContext& ctx) {
    if (!std::isfinite(theta.theta1) || !std::isfinite(theta.theta2))
        throw std::invalid_argument("theta must be finite");
    if (std::abs(theta.theta2) > ctx.theta2_bound)
        throw std::runtime_error(
            "log_target: |theta2| exceeded the runaway bound; the improper "
            "intensity prior may be unidentified for this data");

    const double lambda = std::exp(theta.theta1);
    const double I = std::exp(theta.theta2);

    TargetEval out;
    if (ctx.surrogate != nullptr && ctx.surrogate->box.contains(lambda, I)) {
        const auto [y1, y2] = zeta_inv(ctx.surrogate->box, lambda, I);
        const Thermogram g = evaluate_surrogate(*ctx.surrogate, y1, y2);
        out.log_density = log_marginal_likelihood(ctx.data, g.temps, ctx.prior);
        out.used_surrogate = true;
    } else {
        if (ctx.ops == nullptr)
            throw std::runtime_error("log_target: no fallback solver context");
        const Thermogram g =
            plain_solve(*ctx.ops, ctx.material, ctx.geometry, ctx.disc, lambda, I,
                        static_cast<int>(ctx.data.size()));
        out.log_density = log_marginal_likelihood(ctx.data, g.temps, ctx.prior);
        out.used_surrogate = false;
    }
    out.log_density += log_prior(theta, ctx.prior);
    return out;
}

}  // namespace lfa

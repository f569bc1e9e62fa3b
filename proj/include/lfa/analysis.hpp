#pragma once

#include <vector>

#include <Eigen/Dense>

#include "lfa/bayes.hpp"
#include "lfa/mcmc.hpp"

namespace lfa {

struct Histogram {
    Eigen::VectorXd edges;    // bins + 1 entries
    Eigen::VectorXd density;  // normalized so the histogram integrates to 1
};

struct ConditionalSlice {
    double I_lo = 0, I_hi = 0;
    long count = 0;
    bool low_confidence = false;  // fewer than 1000 samples in the window
    Histogram hist;               // lambda histogram conditional on the window
};

struct PosteriorSummary {
    double mean_lambda = 0, sd_lambda = 0;
    double mean_I = 0, sd_I = 0;
    double corr_lambda_I = 0;
    bool corr_defined = true;  // false for degenerate (zero-variance) chains
    double mean_alpha = 0, sd_alpha = 0;
    Histogram lambda_hist, I_hist;
    Eigen::VectorXd joint_lambda_edges, joint_I_edges;
    Eigen::MatrixXd joint_density;
    std::vector<ConditionalSlice> conditionals;
    long n_samples = 0;
};

struct SummaryOptions {
    int bins = 100;
    int joint_bins = 100;
    // Conditional I-windows as (lo, hi) pairs; when empty, two default
    // windows of half-sd width centred at mean_I -/+ one sd are used.
    std::vector<std::pair<double, double>> I_windows;
};

PosteriorSummary summarize(const Chain& chain, const MaterialProperties& material,
                           const SummaryOptions& options = {});

struct MeanThermogram {
    Thermogram thermogram;
    bool used_surrogate = false;
};

// Observation operator evaluated at theta = (ln mean_lambda, ln mean_I).
MeanThermogram posterior_mean_thermogram(const PosteriorSummary& summary,
                                         const PosteriorContext& ctx);

}  // namespace lfa

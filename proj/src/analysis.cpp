#include "lfa/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfa {

namespace {

Histogram make_histogram(const std::vector<double>& values, int bins) {
    Histogram h;
    if (values.empty()) return h;
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    double lo = *mn_it, hi = *mx_it;
    if (hi <= lo) {  // degenerate sample, widen artificially; keep the pad
        // well above machine epsilon so the bin edges stay distinct
        const double pad = std::max(1.0, std::abs(lo)) * 1e-6;
        lo -= pad;
        hi += pad;
    }
    h.edges = Eigen::VectorXd::LinSpaced(bins + 1, lo, hi);
    h.density = Eigen::VectorXd::Zero(bins);
    const double width = (hi - lo) / bins;
    for (double v : values) {
        int b = static_cast<int>((v - lo) / width);
        b = std::clamp(b, 0, bins - 1);
        h.density[b] += 1.0;
    }
    h.density /= static_cast<double>(values.size()) * width;
    return h;
}

// Streaming (Welford-style) first and second joint moments.
struct Moments2d {
    long n = 0;
    double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
    void add(double x, double y) {
        ++n;
        const double dx = x - mx, dy = y - my;
        mx += dx / n;
        my += dy / n;
        sxx += dx * (x - mx);
        syy += dy * (y - my);
        sxy += dx * (y - my);
    }
};

}  // namespace

PosteriorSummary summarize(const Chain& chain, const MaterialProperties& material,
                           const SummaryOptions& options) {
    if (chain.samples.empty())
        throw std::invalid_argument("summarize: chain is empty");
    material.validate();

    const long n = static_cast<long>(chain.samples.size());
    std::vector<double> lambdas(n), intensities(n);
    Moments2d mom;
    for (long i = 0; i < n; ++i) {
        const double l = std::exp(chain.samples[i].theta.theta1);
        const double I = std::exp(chain.samples[i].theta.theta2);
        lambdas[i] = l;
        intensities[i] = I;
        mom.add(l, I);
    }

    PosteriorSummary s;
    s.n_samples = n;
    s.mean_lambda = mom.mx;
    s.mean_I = mom.my;
    s.sd_lambda = n > 1 ? std::sqrt(mom.sxx / (n - 1)) : 0.0;
    s.sd_I = n > 1 ? std::sqrt(mom.syy / (n - 1)) : 0.0;
    if (s.sd_lambda > 0 && s.sd_I > 0) {
        s.corr_lambda_I = mom.sxy / std::sqrt(mom.sxx * mom.syy);
        s.corr_lambda_I = std::clamp(s.corr_lambda_I, -1.0, 1.0);
    } else {
        s.corr_lambda_I = 0.0;
        s.corr_defined = false;
    }

    const double rc = material.rho * material.c_p;
    s.mean_alpha = s.mean_lambda / rc;
    s.sd_alpha = s.sd_lambda / rc;

    s.lambda_hist = make_histogram(lambdas, options.bins);
    s.I_hist = make_histogram(intensities, options.bins);

    // Joint 2D histogram.
    {
        const int jb = options.joint_bins;
        s.joint_lambda_edges = Eigen::VectorXd::LinSpaced(
            jb + 1, s.lambda_hist.edges[0], s.lambda_hist.edges[options.bins]);
        s.joint_I_edges = Eigen::VectorXd::LinSpaced(jb + 1, s.I_hist.edges[0],
                                                     s.I_hist.edges[options.bins]);
        s.joint_density = Eigen::MatrixXd::Zero(jb, jb);
        const double wl = s.joint_lambda_edges[jb] - s.joint_lambda_edges[0];
        const double wi = s.joint_I_edges[jb] - s.joint_I_edges[0];
        const double bl = wl / jb, bi = wi / jb;
        for (long i = 0; i < n; ++i) {
            int a = static_cast<int>((lambdas[i] - s.joint_lambda_edges[0]) / bl);
            int b = static_cast<int>((intensities[i] - s.joint_I_edges[0]) / bi);
            a = std::clamp(a, 0, jb - 1);
            b = std::clamp(b, 0, jb - 1);
            s.joint_density(a, b) += 1.0;
        }
        s.joint_density /= static_cast<double>(n) * bl * bi;
    }

    // Conditional lambda histograms over I-windows.
    std::vector<std::pair<double, double>> windows = options.I_windows;
    if (windows.empty() && s.sd_I > 0) {
        const double half = 0.25 * s.sd_I;
        windows.push_back({s.mean_I - s.sd_I - half, s.mean_I - s.sd_I + half});
        windows.push_back({s.mean_I + s.sd_I - half, s.mean_I + s.sd_I + half});
    }
    for (const auto& [lo, hi] : windows) {
        ConditionalSlice slice;
        slice.I_lo = lo;
        slice.I_hi = hi;
        std::vector<double> sel;
        for (long i = 0; i < n; ++i)
            if (intensities[i] >= lo && intensities[i] < hi) sel.push_back(lambdas[i]);
        slice.count = static_cast<long>(sel.size());
        slice.low_confidence = slice.count < 1000;
        if (!sel.empty()) slice.hist = make_histogram(sel, options.bins);
        s.conditionals.push_back(std::move(slice));
    }
    return s;
}

MeanThermogram posterior_mean_thermogram(const PosteriorSummary& summary,
                                         const PosteriorContext& ctx) {
    MeanThermogram out;
    if (ctx.surrogate != nullptr &&
        ctx.surrogate->box.contains(summary.mean_lambda, summary.mean_I)) {
        const auto [y1, y2] =
            zeta_inv(ctx.surrogate->box, summary.mean_lambda, summary.mean_I);
        out.thermogram = evaluate_surrogate(*ctx.surrogate, y1, y2);
        out.used_surrogate = true;
    } else {
        if (ctx.ops == nullptr)
            throw std::runtime_error("posterior_mean_thermogram: no solver context");
        out.thermogram =
            plain_solve(*ctx.ops, ctx.material, ctx.geometry, ctx.disc,
                        summary.mean_lambda, summary.mean_I,
                        static_cast<int>(ctx.data.size()));
        out.used_surrogate = false;
    }
    return out;
}

}  // namespace lfa

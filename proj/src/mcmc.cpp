#include "lfa/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace lfa {

void ChainConfig::validate() const {
    if (M <= n_burn || n_burn < 0)
        throw std::invalid_argument("chain config requires M > n_burn >= 0");
    if (thin < 1) throw std::invalid_argument("chain.thin must be >= 1");
    if (!(beta > 0)) throw std::invalid_argument("chain.beta must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 make_rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    std::seed_seq seq{static_cast<unsigned>(splitmix64(s)),
                      static_cast<unsigned>(splitmix64(s)),
                      static_cast<unsigned>(splitmix64(s)),
                      static_cast<unsigned>(splitmix64(s))};
    return std::mt19937_64(seq);
}

InitialDrawFn prior_initial_draw(const PriorSpec& prior, const SurrogateBox& box) {
    const double m = prior.m_lambda, s = prior.s_lambda;
    const double t2 = std::log(box.mu_I);
    return [m, s, t2](std::mt19937_64& rng) {
        std::normal_distribution<double> n01(0.0, 1.0);
        return Theta{m + s * n01(rng), t2 + 0.1 * n01(rng)};
    };
}

Chain rwmh(const LogTargetFn& target, const ChainConfig& config,
           const InitialDrawFn& initial_draw) {
    config.validate();
    auto rng = make_rng(config.seed);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    Theta current;
    TargetEval cur_eval;
    bool started = false;
    if (config.theta0) {
        current = *config.theta0;
        cur_eval = target(current);
        if (!std::isfinite(cur_eval.log_density))
            throw std::runtime_error("rwmh: log target not finite at theta0");
        started = true;
    } else {
        for (int attempt = 0; attempt < 100 && !started; ++attempt) {
            current = initial_draw(rng);
            cur_eval = target(current);
            started = std::isfinite(cur_eval.log_density);
        }
        if (!started)
            throw std::runtime_error(
                "rwmh: failed to draw a finite-density initial state in 100 tries");
    }

    std::vector<ChainSample> raw;
    raw.reserve(config.M);

    long accepted = 0, fallback = 0;
    for (long m = 0; m < config.M; ++m) {
        const Theta proposal{current.theta1 + config.beta * n01(rng),
                             current.theta2 + config.beta * n01(rng)};
        TargetEval prop_eval;
        bool finite = true;
        try {
            prop_eval = target(proposal);
            finite = std::isfinite(prop_eval.log_density);
        } catch (const std::domain_error&) {
            finite = false;
        }
        if (finite && !prop_eval.used_surrogate) ++fallback;

        // Symmetric proposal: the Hastings q-ratio is 1 and contributes 0 in
        // log space. Kept explicit so asymmetric proposals can plug in.
        const double log_q_ratio = 0.0;
        bool accept = false;
        if (finite) {
            const double log_p =
                prop_eval.log_density - cur_eval.log_density + log_q_ratio;
            accept = log_p >= 0.0 || u01(rng) < std::exp(log_p);
        } else {
            u01(rng);  // keep the draw sequence aligned with accepted paths
        }
        if (accept) {
            current = proposal;
            cur_eval = prop_eval;
            ++accepted;
        }
        raw.push_back({current, accept, cur_eval.used_surrogate});
    }

    Chain chain = postprocess(raw, config.n_burn, config.thin);
    chain.accepted = accepted;
    chain.proposed = config.M;
    chain.fallback_count = fallback;
    chain.seed = config.seed;
    chain.beta = config.beta;
    return chain;
}

double tune_beta(const LogTargetFn& target, const Theta& start, double beta0,
                 long pilot_length, std::uint64_t seed) {
    if (pilot_length < 1000)
        throw std::invalid_argument("tune_beta: pilot length must be >= 1000");

    const double target_rate = 0.23;
    const int max_rounds = 30;
    double log_beta = std::log(beta0);
    double best_beta = beta0;
    double best_gap = std::numeric_limits<double>::infinity();
    Theta state = start;

    for (int round = 0; round < max_rounds; ++round) {
        ChainConfig cfg;
        cfg.M = pilot_length;
        cfg.n_burn = 0;
        cfg.beta = std::exp(log_beta);
        cfg.seed = seed + static_cast<std::uint64_t>(round) + 1;
        cfg.theta0 = state;
        const Chain pilot = rwmh(target, cfg, {});
        const double rate = pilot.acceptance_rate();
        state = pilot.samples.back().theta;

        const double gap = std::abs(rate - target_rate);
        if (gap < best_gap) {
            best_gap = gap;
            best_beta = cfg.beta;
        }
        if (rate >= 0.18 && rate <= 0.30) return cfg.beta;

        // Robbins-Monro step on log beta; acceptance falls as beta grows.
        const double gain = 2.0 / std::sqrt(static_cast<double>(round + 1));
        log_beta += gain * (rate - target_rate);
    }
    if (best_gap > 0.27)
        std::cerr << "tune_beta: acceptance stayed outside [0.1, 0.5]; "
                     "returning best found\n";
    return best_beta;
}

Chain postprocess(const std::vector<ChainSample>& raw, long n_burn, long thin) {
    const long n = static_cast<long>(raw.size());
    if (n_burn < 0 || n_burn >= n)
        throw std::invalid_argument("postprocess: n_burn must be < chain length");
    if (thin < 1) throw std::invalid_argument("postprocess: thin must be >= 1");
    Chain chain;
    chain.n_burn = n_burn;
    chain.thin = thin;
    const long kept = (n - n_burn) / thin;
    chain.samples.reserve(kept);
    for (long j = 0; j < kept; ++j) chain.samples.push_back(raw[n_burn + j * thin]);
    return chain;
}

}  // namespace lfa

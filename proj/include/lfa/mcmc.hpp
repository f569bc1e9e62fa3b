#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "lfa/bayes.hpp"

namespace lfa {

struct ChainConfig {
    long M = 0;            // total samples (post-initial state)
    long n_burn = 0;       // discarded leading samples
    long thin = 1;         // keep-every stride
    double beta = 0.1;     // isotropic proposal sd in theta space
    std::uint64_t seed = 0;
    std::optional<Theta> theta0;  // explicit start; otherwise drawn from prior

    void validate() const;
};

struct ChainSample {
    Theta theta;
    bool accepted = false;
    bool used_surrogate = false;
};

struct Chain {
    std::vector<ChainSample> samples;  // post burn-in, thinned
    long accepted = 0;
    long proposed = 0;
    long fallback_count = 0;  // off-box target evaluations
    std::uint64_t seed = 0;
    double beta = 0;
    long n_burn = 0;
    long thin = 1;

    double acceptance_rate() const {
        return proposed > 0 ? static_cast<double>(accepted) / proposed : 0.0;
    }
};

using LogTargetFn = std::function<TargetEval(const Theta&)>;
using InitialDrawFn = std::function<Theta(std::mt19937_64&)>;

// Per-chain RNG seeded through splitmix64 so chains with distinct seeds are
// decorrelated.
std::mt19937_64 make_rng(std::uint64_t seed);

// Draw theta1 from the lognormal prior; theta2 from the log of the box
// midpoint with a small jitter (the intensity prior is improper).
InitialDrawFn prior_initial_draw(const PriorSpec& prior, const SurrogateBox& box);

Chain rwmh(const LogTargetFn& target, const ChainConfig& config,
           const InitialDrawFn& initial_draw);

// Stochastic-approximation tuning of the proposal sd towards 23% acceptance.
// Tuning samples are discarded.
double tune_beta(const LogTargetFn& target, const Theta& start, double beta0,
                 long pilot_length, std::uint64_t seed);

Chain postprocess(const std::vector<ChainSample>& raw, long n_burn, long thin);

}  // namespace lfa

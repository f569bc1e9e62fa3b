#pragma once

#include <cstdint>
#include <string>

#include "lfa/analysis.hpp"
#include "lfa/bayes.hpp"
#include "lfa/fem.hpp"
#include "lfa/geometry.hpp"
#include "lfa/mcmc.hpp"
#include "lfa/solvers.hpp"

namespace lfa {

struct Paths {
    std::string data;
    std::string surrogate;
    std::string output_dir = ".";
};

// Complete problem statement parsed from a key-value config file.
struct ExperimentConfig {
    ExperimentGeometry geometry;
    MaterialProperties material;
    LaserProfile profile;
    double h_target = 0;
    DiscretizationParams disc;
    int n_d = 401;
    SurrogateBox box;
    PriorSpec prior;
    ChainConfig chain;
    bool tune = true;
    int bins = 100;
    Paths paths;

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);

Thermogram read_thermogram(const std::string& path);
void write_thermogram(const std::string& path, const Thermogram& t);

// Plain solve at the truth plus iid Gaussian noise.
Thermogram synthesize_data(const ExperimentConfig& config, const FemOperators& ops,
                           double lambda_true, double I_true, double noise_sd,
                           std::uint64_t seed);

void save_surrogate(const std::string& path, const SgfemSurrogate& surrogate);
SgfemSurrogate load_surrogate(const std::string& path);

void write_chain_csv(const std::string& path, const Chain& chain);
void write_summary_report(const std::string& path, const PosteriorSummary& summary,
                          const Chain& chain);
void write_histogram_csv(const std::string& path, const Histogram& hist);
void write_joint_histogram_csv(const std::string& path, const PosteriorSummary& s);

// Fingerprint of every input affecting the surrogate coefficients B; a
// mismatch between a surrogate file and the sampling config is a hard error.
std::uint64_t forward_input_hash(const ExperimentConfig& config);

struct ForwardSetup {
    Mesh mesh;
    FemOperators ops;
};

ForwardSetup build_forward_setup(const ExperimentConfig& config);
SgfemSurrogate build_surrogate(const ExperimentConfig& config, const ForwardSetup& setup);

Eigen::VectorXd measurement_time_grid(const ExperimentConfig& config);

}  // namespace lfa

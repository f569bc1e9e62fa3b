// Batch CLI for laser-flash Bayesian inference:
//   forward         plain solve -> thermogram CSV
//   build-surrogate offline SGFEM stage -> surrogate file + build report
//   sample          surrogate + data -> chain CSV + acceptance report
//   summarize       chain CSV -> summary + histogram CSVs + mean thermogram
//   synth           synthetic data CSV
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lfa/io.hpp"
#include "lfa/util.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string out_path(const lfa::ExperimentConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.paths.output_dir);
    return (fs::path(cfg.paths.output_dir) / name).string();
}

lfa::Chain read_chain_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open chain file: " + path);
    lfa::Chain chain;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("index,", 0) == 0) continue;
        std::stringstream ss(line);
        std::string field;
        lfa::ChainSample s;
        std::getline(ss, field, ',');  // index
        std::getline(ss, field, ',');
        s.theta.theta1 = std::stod(field);
        std::getline(ss, field, ',');
        s.theta.theta2 = std::stod(field);
        std::getline(ss, field, ',');  // lambda
        std::getline(ss, field, ',');  // I
        std::getline(ss, field, ',');
        s.accepted = field == "1";
        std::getline(ss, field, ',');
        s.used_surrogate = field == "1";
        chain.samples.push_back(s);
    }
    if (chain.samples.empty()) throw std::runtime_error(path + ": empty chain");
    return chain;
}

int cmd_forward(const lfa::ExperimentConfig& cfg, double lambda, double I,
                const std::string& output) {
    const auto setup = lfa::build_forward_setup(cfg);
    const auto t0 = Clock::now();
    const lfa::Thermogram t = lfa::plain_solve(setup.ops, cfg.material, cfg.geometry,
                                               cfg.disc, lambda, I, cfg.n_d);
    const double dt = seconds_since(t0);
    const std::string path = output.empty() ? out_path(cfg, "thermogram.csv") : output;
    lfa::write_thermogram(path, t);
    std::cout << "forward: n_h=" << setup.ops.n_h << " n_t=" << cfg.disc.n_t
              << " solve_s=" << dt << " -> " << path << '\n';
    return 0;
}

int cmd_build_surrogate(const lfa::ExperimentConfig& cfg) {
    const auto t0 = Clock::now();
    const auto setup = lfa::build_forward_setup(cfg);
    const double assemble_s = seconds_since(t0);
    const auto t1 = Clock::now();
    const lfa::SgfemSurrogate sur = lfa::build_surrogate(cfg, setup);
    const double solve_s = seconds_since(t1);
    if (cfg.paths.surrogate.empty())
        throw std::runtime_error("config: paths.surrogate is required");
    lfa::save_surrogate(cfg.paths.surrogate, sur);
    std::cout << "build-surrogate: n_h=" << sur.n_h << " n_k=" << sur.basis.n_k
              << " n_t=" << cfg.disc.n_t << " assemble_s=" << assemble_s
              << " solve_s=" << solve_s << " -> " << cfg.paths.surrogate << '\n';
    return 0;
}

int cmd_sample(const lfa::ExperimentConfig& cfg) {
    if (cfg.paths.surrogate.empty() || cfg.paths.data.empty())
        throw std::runtime_error("config: paths.surrogate and paths.data are required");
    const lfa::SgfemSurrogate sur = lfa::load_surrogate(cfg.paths.surrogate);
    if (sur.input_hash != lfa::forward_input_hash(cfg))
        throw std::runtime_error(
            "surrogate was built under a different configuration; rebuild it");
    const lfa::Thermogram data = lfa::read_thermogram(cfg.paths.data);
    if (data.times.size() != cfg.n_d)
        throw std::runtime_error("data length does not match discretization.n_d");

    const auto setup = lfa::build_forward_setup(cfg);
    lfa::PosteriorContext ctx;
    ctx.surrogate = &sur;
    ctx.ops = &setup.ops;
    ctx.material = cfg.material;
    ctx.geometry = cfg.geometry;
    ctx.disc = cfg.disc;
    ctx.prior = cfg.prior;
    ctx.data = data.temps;
    auto target = [&ctx](const lfa::Theta& th) { return lfa::log_target(th, ctx); };

    lfa::ChainConfig chain_cfg = cfg.chain;
    if (cfg.tune) {
        lfa::Theta start = chain_cfg.theta0
                               ? *chain_cfg.theta0
                               : lfa::Theta{std::log(cfg.box.mu_lambda),
                                            std::log(cfg.box.mu_I)};
        chain_cfg.beta = lfa::tune_beta(target, start, chain_cfg.beta, 2000,
                                        chain_cfg.seed + 7777);
        std::cout << "sample: tuned beta=" << chain_cfg.beta << '\n';
    }

    const auto t0 = Clock::now();
    const lfa::Chain chain = lfa::rwmh(
        target, chain_cfg, lfa::prior_initial_draw(cfg.prior, cfg.box));
    const double dt = seconds_since(t0);

    const std::string path = out_path(cfg, "chain.csv");
    lfa::write_chain_csv(path, chain);
    std::cout << "sample: M=" << chain.proposed
              << " acceptance=" << chain.acceptance_rate()
              << " fallback_fraction="
              << static_cast<double>(chain.fallback_count) / chain.proposed
              << " wall_s=" << dt << " per_sample_s=" << dt / chain.proposed
              << " -> " << path << '\n';
    return 0;
}

int cmd_summarize(const lfa::ExperimentConfig& cfg, const std::string& chain_path) {
    const std::string cpath =
        chain_path.empty() ? out_path(cfg, "chain.csv") : chain_path;
    const lfa::Chain chain = read_chain_csv(cpath);
    lfa::SummaryOptions opts;
    opts.bins = cfg.bins;
    opts.joint_bins = cfg.bins;
    const lfa::PosteriorSummary summary =
        lfa::summarize(chain, cfg.material, opts);

    lfa::write_summary_report(out_path(cfg, "summary.txt"), summary, chain);
    lfa::write_histogram_csv(out_path(cfg, "hist_lambda.csv"), summary.lambda_hist);
    lfa::write_histogram_csv(out_path(cfg, "hist_I.csv"), summary.I_hist);
    lfa::write_joint_histogram_csv(out_path(cfg, "hist_joint.csv"), summary);
    for (std::size_t c = 0; c < summary.conditionals.size(); ++c)
        if (summary.conditionals[c].count > 0)
            lfa::write_histogram_csv(
                out_path(cfg, "hist_lambda_cond" + std::to_string(c) + ".csv"),
                summary.conditionals[c].hist);

    // Posterior-mean model thermogram for fit plots.
    if (!cfg.paths.surrogate.empty() && fs::exists(cfg.paths.surrogate)) {
        const lfa::SgfemSurrogate sur = lfa::load_surrogate(cfg.paths.surrogate);
        const auto setup = lfa::build_forward_setup(cfg);
        lfa::PosteriorContext ctx;
        ctx.surrogate = &sur;
        ctx.ops = &setup.ops;
        ctx.material = cfg.material;
        ctx.geometry = cfg.geometry;
        ctx.disc = cfg.disc;
        ctx.prior = cfg.prior;
        ctx.data = Eigen::VectorXd::Zero(cfg.n_d);
        const auto mean_tg = lfa::posterior_mean_thermogram(summary, ctx);
        lfa::write_thermogram(out_path(cfg, "mean_thermogram.csv"), mean_tg.thermogram);
        if (!mean_tg.used_surrogate)
            std::cout << "summarize: posterior mean outside surrogate box, "
                         "plain solve used\n";
    }

    std::cout << "summarize: n=" << summary.n_samples
              << " mean_lambda=" << summary.mean_lambda
              << " sd_lambda=" << summary.sd_lambda
              << " mean_I=" << summary.mean_I
              << " corr=" << summary.corr_lambda_I << '\n';
    return 0;
}

int cmd_synth(const lfa::ExperimentConfig& cfg, double lambda, double I,
              double noise_sd, std::uint64_t seed, const std::string& output) {
    const auto setup = lfa::build_forward_setup(cfg);
    const lfa::Thermogram t =
        lfa::synthesize_data(cfg, setup.ops, lambda, I, noise_sd, seed);
    const std::string path = output.empty() ? out_path(cfg, "synthetic.csv") : output;
    lfa::write_thermogram(path, t);
    std::cout << "synth: lambda=" << lambda << " I=" << I << " noise_sd=" << noise_sd
              << " seed=" << seed << " -> " << path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laser-flash Bayesian inference with an SGFEM surrogate"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output, chain_path;
    double lambda = 350.0, intensity = 1.2e12, noise_sd = 0.05;
    std::uint64_t seed = 1;

    auto add_config = [&config_path](CLI::App* cmd) {
        cmd->add_option("-c,--config", config_path, "configuration file")
            ->required();
    };

    auto* forward = app.add_subcommand("forward", "deterministic thermogram");
    add_config(forward);
    forward->add_option("--lambda", lambda, "thermal conductivity (W/m/K)");
    forward->add_option("--intensity", intensity, "laser intensity (W/m^3)");
    forward->add_option("-o,--output", output, "output CSV path");

    auto* build = app.add_subcommand("build-surrogate", "offline SGFEM stage");
    add_config(build);

    auto* sample = app.add_subcommand("sample", "run the RWMH sampler");
    add_config(sample);

    auto* summarize = app.add_subcommand("summarize", "posterior summaries");
    add_config(summarize);
    summarize->add_option("--chain", chain_path, "chain CSV (default: output_dir/chain.csv)");

    auto* synth = app.add_subcommand("synth", "synthetic data generation");
    add_config(synth);
    synth->add_option("--lambda", lambda, "true thermal conductivity");
    synth->add_option("--intensity", intensity, "true laser intensity");
    synth->add_option("--noise-sd", noise_sd, "noise standard deviation (K)");
    synth->add_option("--seed", seed, "noise RNG seed");
    synth->add_option("-o,--output", output, "output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        const lfa::ExperimentConfig cfg = lfa::load_config(config_path);
        if (forward->parsed()) return cmd_forward(cfg, lambda, intensity, output);
        if (build->parsed()) return cmd_build_surrogate(cfg);
        if (sample->parsed()) return cmd_sample(cfg);
        if (summarize->parsed()) return cmd_summarize(cfg, chain_path);
        if (synth->parsed())
            return cmd_synth(cfg, lambda, intensity, noise_sd, seed, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

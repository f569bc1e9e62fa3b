#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "lfa/io.hpp"

using namespace lfa;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("lfa_io_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_file(const TempDir& dir, const std::string& name,
                       const std::string& content) {
    const std::string p = dir.file(name);
    std::ofstream out(p);
    out << content;
    return p;
}

const char* kBaseConfig = R"(# sample experiment
[geometry]
R = 1.240e-2
H = 2.037e-3
z_f = 1.273e-4
t_f = 4.0e-4
T = 4.0e-2
L = 6.2e-3

[material]
rho = 8.930e3
c_p = 3.970e2
kappa = 1.100e3
T_a = 3.850e2

[laser]
profile = uniform

[discretization]
h_target = 8e-4
n_t = 400
degree = 4
n_d = 401

[chain]
M = 5000
n_burn = 500
seed = 9
theta0 = explicit
theta1 = 5.87
theta2 = 27.8

[paths]
data = /tmp/data.csv
surrogate = /tmp/sur.bin
output_dir = /tmp/out
)";

ExperimentConfig small_config(const TempDir& dir, const std::string& extra = "",
                              const std::string& name = "cfg.ini") {
    return load_config(write_file(dir, name, std::string(kBaseConfig) + extra));
}

}  // namespace

TEST_CASE("config parsing: values, defaults and comments") {
    TempDir dir;
    const auto cfg = small_config(dir);
    CHECK(cfg.geometry.R == 1.240e-2);
    CHECK(cfg.geometry.L == 6.2e-3);
    CHECK(cfg.material.kappa == 1.100e3);
    CHECK(cfg.disc.n_t == 400);
    CHECK(cfg.disc.tau == doctest::Approx(1e-4).epsilon(1e-12));
    CHECK(cfg.disc.degree == 4);
    CHECK(cfg.n_d == 401);
    // defaulted blocks
    CHECK(cfg.box.lambda_min() == doctest::Approx(150.0).epsilon(1e-12));
    CHECK(cfg.box.I_max() == doctest::Approx(1.8e12).epsilon(1e-12));
    const auto [m, s] = lognormal_hyperparams(328.5, 50.0);
    CHECK(cfg.prior.m_lambda == doctest::Approx(m).epsilon(1e-14));
    CHECK(cfg.prior.s_lambda == doctest::Approx(s).epsilon(1e-14));
    CHECK(cfg.prior.alpha_sigma == 3.0);
    CHECK(cfg.prior.beta_sigma == 0.0079);
    CHECK(cfg.bins == 100);
    CHECK(cfg.tune);
    // chain block with an explicit start
    CHECK(cfg.chain.M == 5000);
    CHECK(cfg.chain.seed == 9);
    REQUIRE(cfg.chain.theta0.has_value());
    CHECK(cfg.chain.theta0->theta1 == 5.87);
    CHECK(cfg.chain.theta0->theta2 == 27.8);
    CHECK(cfg.paths.output_dir == "/tmp/out");
}

TEST_CASE("config rejects inconsistent or malformed input") {
    TempDir dir;
    // n_t not a multiple of n_d - 1
    std::string bad = kBaseConfig;
    bad.replace(bad.find("n_t = 400"), 9, "n_t = 801");
    CHECK_THROWS_AS(load_config(write_file(dir, "a.ini", bad)), std::invalid_argument);

    bad = kBaseConfig;
    bad.replace(bad.find("kappa = 1.100e3"), 15, "kappa = -3.0\n  ");
    CHECK_THROWS_AS(load_config(write_file(dir, "b.ini", bad)), std::invalid_argument);

    bad = kBaseConfig;
    bad.replace(bad.find("L = 6.2e-3"), 10, "# L removed");
    CHECK_THROWS_WITH_AS(load_config(write_file(dir, "c.ini", bad)),
                         doctest::Contains("geometry.L"), std::runtime_error);

    bad = kBaseConfig;
    bad.replace(bad.find("profile = uniform"), 17, "profile = square ");
    CHECK_THROWS_AS(load_config(write_file(dir, "d.ini", bad)), std::runtime_error);

    bad = kBaseConfig;
    bad.replace(bad.find("R = 1.240e-2"), 12, "R = twelve  ");
    CHECK_THROWS_WITH_AS(load_config(write_file(dir, "e.ini", bad)),
                         doctest::Contains("geometry.R"), std::runtime_error);

    CHECK_THROWS_AS(load_config(dir.file("missing.ini")), std::runtime_error);
}

TEST_CASE("gaussian laser profile requires its radius") {
    TempDir dir;
    const auto cfg = small_config(dir, "\n[laser]\nprofile = gaussian\nr_f = 4e-3\n");
    CHECK(cfg.profile.chi(0.0) > cfg.profile.chi(4e-3));
    std::string bad = std::string(kBaseConfig) + "\n[laser]\nprofile = gaussian\n";
    CHECK_THROWS_WITH_AS(load_config(write_file(dir, "g.ini", bad)),
                         doctest::Contains("laser.r_f"), std::runtime_error);
}

TEST_CASE("thermogram round-trips bit-exactly") {
    TempDir dir;
    Thermogram t;
    t.times = Eigen::VectorXd::LinSpaced(11, 0.0, 0.04);
    t.temps = Eigen::VectorXd::LinSpaced(11, 385.0, 392.123456789012345);
    t.temps[3] = 385.0 + 1e-13;
    const std::string p = dir.file("t.csv");
    write_thermogram(p, t);
    const Thermogram r = read_thermogram(p);
    REQUIRE(r.times.size() == 11);
    for (int i = 0; i < 11; ++i) {
        CHECK(r.times[i] == t.times[i]);
        CHECK(r.temps[i] == t.temps[i]);
    }
}

TEST_CASE("thermogram reader reports malformed rows with line numbers") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(
        read_thermogram(write_file(dir, "h.csv", "wrong,header\n0,385\n1,386\n")),
        doctest::Contains(":1:"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        read_thermogram(write_file(
            dir, "m.csv", "time_s,temperature_K\n0,385\n0.1,oops\n0.2,386\n")),
        doctest::Contains(":3:"), std::runtime_error);
    CHECK_THROWS_AS(
        read_thermogram(write_file(dir, "s.csv", "time_s,temperature_K\n0,385\n")),
        std::runtime_error);
    CHECK_THROWS_WITH_AS(
        read_thermogram(write_file(
            dir, "d.csv", "time_s,temperature_K\n0,385\n0.2,386\n0.1,387\n")),
        doctest::Contains("increasing"), std::runtime_error);
    CHECK_THROWS_WITH_AS(
        read_thermogram(write_file(
            dir, "u.csv", "time_s,temperature_K\n0,385\n0.1,386\n0.35,387\n")),
        doctest::Contains("equally spaced"), std::runtime_error);
}

TEST_CASE("surrogate files round-trip bit-exactly") {
    TempDir dir;
    auto cfg = small_config(dir);
    cfg.disc.n_t = 20;
    cfg.disc.tau = cfg.geometry.T / 20;
    cfg.disc.degree = 3;
    cfg.n_d = 11;
    const auto setup = build_forward_setup(cfg);
    const SgfemSurrogate sur = build_surrogate(cfg, setup);
    CHECK(sur.input_hash == forward_input_hash(cfg));

    const std::string p = dir.file("sur.bin");
    save_surrogate(p, sur);
    const SgfemSurrogate r = load_surrogate(p);
    CHECK(r.basis.degree == sur.basis.degree);
    CHECK(r.basis.n_k == sur.basis.n_k);
    CHECK(r.box.mu_lambda == sur.box.mu_lambda);
    CHECK(r.box.nu_I == sur.box.nu_I);
    CHECK(r.disc.n_t == sur.disc.n_t);
    CHECK(r.disc.tau == sur.disc.tau);
    CHECK(r.n_h == sur.n_h);
    CHECK(r.input_hash == sur.input_hash);
    REQUIRE(r.times.size() == sur.times.size());
    CHECK((r.times - sur.times).lpNorm<Eigen::Infinity>() == 0.0);
    REQUIRE(r.B.rows() == sur.B.rows());
    REQUIRE(r.B.cols() == sur.B.cols());
    CHECK((r.B - sur.B).lpNorm<Eigen::Infinity>() == 0.0);

    // evaluations agree exactly
    const Thermogram a = evaluate_surrogate(sur, 0.3, -0.2);
    const Thermogram b = evaluate_surrogate(r, 0.3, -0.2);
    CHECK((a.temps - b.temps).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("surrogate loader rejects foreign or truncated files") {
    TempDir dir;
    CHECK_THROWS_WITH_AS(load_surrogate(write_file(dir, "x.bin", "not a surrogate")),
                         doctest::Contains("not a surrogate"), std::runtime_error);
    CHECK_THROWS_AS(load_surrogate(dir.file("absent.bin")), std::runtime_error);
}

TEST_CASE("input hash is sensitive to every forward-model input") {
    TempDir dir;
    const auto cfg = small_config(dir);
    const std::uint64_t base = forward_input_hash(cfg);
    CHECK(base == forward_input_hash(cfg));  // deterministic

    auto m1 = cfg;
    m1.geometry.z_f *= 1.0000001;
    CHECK(forward_input_hash(m1) != base);
    auto m2 = cfg;
    m2.disc.n_t += 1;
    CHECK(forward_input_hash(m2) != base);
    auto m3 = cfg;
    m3.box.nu_I *= 1.0000001;
    CHECK(forward_input_hash(m3) != base);
    auto m4 = cfg;
    m4.profile = LaserProfile::gaussian(4e-3);
    CHECK(forward_input_hash(m4) != base);
    auto m5 = cfg;
    m5.h_target *= 0.5;
    CHECK(forward_input_hash(m5) != base);
}

TEST_CASE("synthetic data: noiseless equals the forward solve, seeded noise repeats") {
    TempDir dir;
    auto cfg = small_config(dir);
    cfg.disc.n_t = 40;
    cfg.disc.tau = cfg.geometry.T / 40;
    cfg.n_d = 21;
    const auto setup = build_forward_setup(cfg);

    const Thermogram clean = synthesize_data(cfg, setup.ops, 355.0, 1.2e12, 0.0, 1);
    const Thermogram direct = plain_solve(setup.ops, cfg.material, cfg.geometry,
                                          cfg.disc, 355.0, 1.2e12, cfg.n_d);
    CHECK((clean.temps - direct.temps).lpNorm<Eigen::Infinity>() == 0.0);

    const Thermogram n1 = synthesize_data(cfg, setup.ops, 355.0, 1.2e12, 0.05, 7);
    const Thermogram n2 = synthesize_data(cfg, setup.ops, 355.0, 1.2e12, 0.05, 7);
    const Thermogram n3 = synthesize_data(cfg, setup.ops, 355.0, 1.2e12, 0.05, 8);
    CHECK((n1.temps - n2.temps).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK((n1.temps - n3.temps).lpNorm<Eigen::Infinity>() > 0.0);
    const double rms = std::sqrt((n1.temps - clean.temps).squaredNorm() / cfg.n_d);
    CHECK(rms == doctest::Approx(0.05).epsilon(0.5));
    CHECK_THROWS_AS(synthesize_data(cfg, setup.ops, 355.0, 1.2e12, -0.1, 1),
                    std::invalid_argument);
}

TEST_CASE("measurement grid spans [0, T] with n_d points") {
    TempDir dir;
    const auto cfg = small_config(dir);
    const Eigen::VectorXd g = measurement_time_grid(cfg);
    REQUIRE(g.size() == cfg.n_d);
    CHECK(g[0] == 0.0);
    CHECK(g[cfg.n_d - 1] == cfg.geometry.T);
    CHECK(g[1] - g[0] == doctest::Approx(cfg.geometry.T / (cfg.n_d - 1)));
}

TEST_CASE("chain csv carries provenance and one row per kept sample") {
    TempDir dir;
    Chain c;
    c.seed = 123;
    c.beta = 0.0625;
    c.n_burn = 2;
    c.thin = 1;
    c.accepted = 3;
    c.proposed = 5;
    for (int i = 0; i < 5; ++i)
        c.samples.push_back({Theta{5.8 + 0.01 * i, 27.8}, i % 2 == 0, true});
    const std::string p = dir.file("chain.csv");
    write_chain_csv(p, c);

    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    CHECK(line == "# seed=123 beta=0.0625 n_burn=2 thin=1");
    std::getline(in, line);
    CHECK(line == "index,theta1,theta2,lambda,I,accepted_flag,used_surrogate_flag");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 5);
}

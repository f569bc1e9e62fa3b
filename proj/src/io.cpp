#include "lfa/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lfa/util.hpp"

namespace lfa {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat INI-style key-value store with [section] headers.
class KeyValues {
public:
    explicit KeyValues(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open config file: " + path);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw std::runtime_error("config line " + std::to_string(lineno) +
                                             ": malformed section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": expected key = value");
            values_[section + "." + trim(line.substr(0, eq))] =
                trim(line.substr(eq + 1));
        }
    }

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    std::string get_str(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end())
            throw std::runtime_error("config: missing required field '" + key + "'");
        return it->second;
    }

    std::string get_str(const std::string& key, const std::string& dflt) const {
        auto it = values_.find(key);
        return it == values_.end() ? dflt : it->second;
    }

    double get_double(const std::string& key) const { return parse_double(key, get_str(key)); }

    double get_double(const std::string& key, double dflt) const {
        return has(key) ? get_double(key) : dflt;
    }

    long get_long(const std::string& key) const {
        const std::string s = get_str(key);
        try {
            std::size_t pos = 0;
            const long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("config field '" + key + "': not an integer: " + s);
        }
    }

    long get_long(const std::string& key, long dflt) const {
        return has(key) ? get_long(key) : dflt;
    }

private:
    static double parse_double(const std::string& key, const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("config field '" + key + "': not a number: " + s);
        }
    }

    std::map<std::string, std::string> values_;
};

}  // namespace

void ExperimentConfig::validate() const {
    geometry.validate();
    material.validate();
    disc.validate();
    box.validate();
    prior.validate();
    if (!(h_target > 0))
        throw std::invalid_argument("discretization.h_target must be positive");
    if (n_d < 2) throw std::invalid_argument("discretization.n_d must be >= 2");
    if (disc.n_t % (n_d - 1) != 0)
        throw std::invalid_argument(
            "discretization.n_t must be a multiple of (n_d - 1)");
    const double ratio = geometry.t_f / disc.tau;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
        std::cerr << "config: t_f is not an integer multiple of tau; the pulse "
                     "step straddling t_f is weighted by its overlap\n";
}

ExperimentConfig load_config(const std::string& path) {
    KeyValues kv(path);
    ExperimentConfig cfg;

    cfg.geometry.R = kv.get_double("geometry.R");
    cfg.geometry.H = kv.get_double("geometry.H");
    cfg.geometry.z_f = kv.get_double("geometry.z_f");
    cfg.geometry.t_f = kv.get_double("geometry.t_f");
    cfg.geometry.T = kv.get_double("geometry.T");
    cfg.geometry.L = kv.get_double("geometry.L");

    cfg.material.rho = kv.get_double("material.rho");
    cfg.material.c_p = kv.get_double("material.c_p");
    cfg.material.kappa = kv.get_double("material.kappa");
    cfg.material.T_a = kv.get_double("material.T_a");

    const std::string profile = kv.get_str("laser.profile", "uniform");
    if (profile == "uniform") {
        cfg.profile = LaserProfile::uniform();
    } else if (profile == "gaussian") {
        cfg.profile = LaserProfile::gaussian(kv.get_double("laser.r_f"));
    } else {
        throw std::runtime_error("config field 'laser.profile': expected "
                                 "'uniform' or 'gaussian', got '" + profile + "'");
    }

    cfg.h_target = kv.get_double("discretization.h_target");
    cfg.disc.n_t = static_cast<int>(kv.get_long("discretization.n_t"));
    if (cfg.disc.n_t < 1)
        throw std::runtime_error("config field 'discretization.n_t': must be >= 1");
    cfg.disc.tau = cfg.geometry.T / cfg.disc.n_t;
    cfg.disc.degree = static_cast<int>(kv.get_long("discretization.degree", 6));
    cfg.n_d = static_cast<int>(kv.get_long("discretization.n_d", 401));

    cfg.box = SurrogateBox::from_bounds(
        kv.get_double("surrogate_box.lambda_min", 150.0),
        kv.get_double("surrogate_box.lambda_max", 507.0),
        kv.get_double("surrogate_box.I_min", 0.6e12),
        kv.get_double("surrogate_box.I_max", 1.8e12));

    const double mu_l = kv.get_double("prior.mu_lambda", 328.5);
    const double sig_l = kv.get_double("prior.sigma_lambda", 50.0);
    const auto [m, s] = lognormal_hyperparams(mu_l, sig_l);
    cfg.prior.m_lambda = m;
    cfg.prior.s_lambda = s;
    cfg.prior.alpha_sigma = kv.get_double("prior.alpha_sigma", 3.0);
    cfg.prior.beta_sigma = kv.get_double("prior.beta_sigma", 0.0079);

    cfg.chain.M = kv.get_long("chain.M", 100000);
    cfg.chain.n_burn = kv.get_long("chain.n_burn", 10000);
    cfg.chain.thin = kv.get_long("chain.thin", 1);
    cfg.chain.beta = kv.get_double("chain.beta", 0.01);
    cfg.chain.seed = static_cast<std::uint64_t>(kv.get_long("chain.seed", 1));
    cfg.tune = kv.get_str("chain.tune", "true") == "true";
    const std::string t0 = kv.get_str("chain.theta0", "prior");
    if (t0 == "explicit") {
        cfg.chain.theta0 =
            Theta{kv.get_double("chain.theta1"), kv.get_double("chain.theta2")};
    } else if (t0 != "prior") {
        throw std::runtime_error(
            "config field 'chain.theta0': expected 'prior' or 'explicit'");
    }

    cfg.bins = static_cast<int>(kv.get_long("output.bins", 100));
    cfg.paths.data = kv.get_str("paths.data", "");
    cfg.paths.surrogate = kv.get_str("paths.surrogate", "");
    cfg.paths.output_dir = kv.get_str("paths.output_dir", ".");

    cfg.validate();
    return cfg;
}

Thermogram read_thermogram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open thermogram file: " + path);
    std::string line;
    if (!std::getline(in, line) || trim(line) != "time_s,temperature_K")
        throw std::runtime_error(path + ":1: expected header 'time_s,temperature_K'");

    std::vector<double> times, temps;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed row");
        try {
            std::size_t p1 = 0, p2 = 0;
            const std::string a = trim(line.substr(0, comma));
            const std::string b = trim(line.substr(comma + 1));
            const double t = std::stod(a, &p1);
            const double v = std::stod(b, &p2);
            if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(line);
            times.push_back(t);
            temps.push_back(v);
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed row");
        }
        if (times.size() >= 2 && times[times.size() - 1] <= times[times.size() - 2])
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": times must be strictly increasing");
    }
    if (times.size() < 2)
        throw std::runtime_error(path + ": thermogram needs at least 2 rows");

    const long n = static_cast<long>(times.size());
    const double dt = (times[n - 1] - times[0]) / (n - 1);
    for (long i = 0; i < n; ++i) {
        const double expect = times[0] + i * dt;
        if (std::abs(times[i] - expect) > 1e-9 * std::max(std::abs(expect), dt))
            throw std::runtime_error(path + ": measurement times not equally spaced");
    }

    Thermogram t;
    t.times = Eigen::Map<Eigen::VectorXd>(times.data(), n);
    t.temps = Eigen::Map<Eigen::VectorXd>(temps.data(), n);
    return t;
}

void write_thermogram(const std::string& path, const Thermogram& t) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "time_s,temperature_K\n";
    for (long i = 0; i < t.times.size(); ++i)
        out << format_double(t.times[i]) << ',' << format_double(t.temps[i]) << '\n';
}

Thermogram synthesize_data(const ExperimentConfig& config, const FemOperators& ops,
                           double lambda_true, double I_true, double noise_sd,
                           std::uint64_t seed) {
    if (!(noise_sd >= 0)) throw std::invalid_argument("noise_sd must be >= 0");
    Thermogram t = plain_solve(ops, config.material, config.geometry, config.disc,
                               lambda_true, I_true, config.n_d);
    if (noise_sd > 0) {
        auto rng = make_rng(seed);
        std::normal_distribution<double> noise(0.0, noise_sd);
        for (long i = 0; i < t.temps.size(); ++i) t.temps[i] += noise(rng);
    }
    return t;
}

namespace {

constexpr std::uint32_t kSurrogateMagic = 0x4c465347;  // "LFSG"
constexpr std::uint32_t kSurrogateVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T take(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    if (!in) throw std::runtime_error("surrogate file truncated");
    return v;
}

}  // namespace

void save_surrogate(const std::string& path, const SgfemSurrogate& surrogate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    put(out, kSurrogateMagic);
    put(out, kSurrogateVersion);
    put(out, static_cast<std::int32_t>(surrogate.basis.degree));
    put(out, static_cast<std::int32_t>(surrogate.basis.n_k));
    for (const auto& idx : surrogate.basis.indices) {
        put(out, static_cast<std::int32_t>(idx[0]));
        put(out, static_cast<std::int32_t>(idx[1]));
    }
    put(out, surrogate.box.mu_lambda);
    put(out, surrogate.box.nu_lambda);
    put(out, surrogate.box.mu_I);
    put(out, surrogate.box.nu_I);
    put(out, static_cast<std::int64_t>(surrogate.disc.n_t));
    put(out, surrogate.disc.tau);
    put(out, static_cast<std::int64_t>(surrogate.n_h));
    put(out, surrogate.input_hash);
    put(out, static_cast<std::int64_t>(surrogate.times.size()));
    for (long i = 0; i < surrogate.times.size(); ++i) put(out, surrogate.times[i]);
    for (long i = 0; i < surrogate.B.rows(); ++i)
        for (long j = 0; j < surrogate.B.cols(); ++j) put(out, surrogate.B(i, j));
}

SgfemSurrogate load_surrogate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open surrogate file: " + path);
    if (take<std::uint32_t>(in) != kSurrogateMagic)
        throw std::runtime_error(path + ": not a surrogate file");
    const auto version = take<std::uint32_t>(in);
    if (version != kSurrogateVersion)
        throw std::runtime_error(path + ": unsupported surrogate version " +
                                 std::to_string(version));

    SgfemSurrogate sur;
    const int degree = take<std::int32_t>(in);
    sur.basis = build_basis(degree);
    const int n_k = take<std::int32_t>(in);
    if (n_k != sur.basis.n_k)
        throw std::runtime_error(path + ": inconsistent basis dimension");
    for (int j = 0; j < n_k; ++j) {
        const int a1 = take<std::int32_t>(in);
        const int a2 = take<std::int32_t>(in);
        if (a1 != sur.basis.indices[j][0] || a2 != sur.basis.indices[j][1])
            throw std::runtime_error(path + ": unexpected multi-index ordering");
    }
    sur.box.mu_lambda = take<double>(in);
    sur.box.nu_lambda = take<double>(in);
    sur.box.mu_I = take<double>(in);
    sur.box.nu_I = take<double>(in);
    sur.disc.n_t = static_cast<int>(take<std::int64_t>(in));
    sur.disc.tau = take<double>(in);
    sur.disc.degree = degree;
    sur.n_h = static_cast<int>(take<std::int64_t>(in));
    sur.input_hash = take<std::uint64_t>(in);
    const long n_d = take<std::int64_t>(in);
    sur.times.resize(n_d);
    for (long i = 0; i < n_d; ++i) sur.times[i] = take<double>(in);
    sur.B.resize(n_d, n_k);
    for (long i = 0; i < n_d; ++i)
        for (int j = 0; j < n_k; ++j) sur.B(i, j) = take<double>(in);
    return sur;
}

void write_chain_csv(const std::string& path, const Chain& chain) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# seed=" << chain.seed << " beta=" << format_double(chain.beta)
        << " n_burn=" << chain.n_burn << " thin=" << chain.thin << '\n';
    out << "index,theta1,theta2,lambda,I,accepted_flag,used_surrogate_flag\n";
    for (std::size_t i = 0; i < chain.samples.size(); ++i) {
        const auto& s = chain.samples[i];
        out << i << ',' << format_double(s.theta.theta1) << ','
            << format_double(s.theta.theta2) << ','
            << format_double(std::exp(s.theta.theta1)) << ','
            << format_double(std::exp(s.theta.theta2)) << ',' << (s.accepted ? 1 : 0)
            << ',' << (s.used_surrogate ? 1 : 0) << '\n';
    }
}

void write_summary_report(const std::string& path, const PosteriorSummary& summary,
                          const Chain& chain) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "n_samples = " << summary.n_samples << '\n';
    out << "mean_lambda = " << format_double(summary.mean_lambda) << '\n';
    out << "sd_lambda = " << format_double(summary.sd_lambda) << '\n';
    out << "mean_I = " << format_double(summary.mean_I) << '\n';
    out << "sd_I = " << format_double(summary.sd_I) << '\n';
    out << "corr_lambda_I = "
        << (summary.corr_defined ? format_double(summary.corr_lambda_I)
                                 : std::string("undefined"))
        << '\n';
    out << "mean_alpha = " << format_double(summary.mean_alpha) << '\n';
    out << "sd_alpha = " << format_double(summary.sd_alpha) << '\n';
    out << "acceptance_rate = " << format_double(chain.acceptance_rate()) << '\n';
    out << "fallback_count = " << chain.fallback_count << '\n';
    for (std::size_t c = 0; c < summary.conditionals.size(); ++c) {
        const auto& slice = summary.conditionals[c];
        out << "conditional_" << c << "_I_window = [" << format_double(slice.I_lo)
            << ", " << format_double(slice.I_hi) << "]\n";
        out << "conditional_" << c << "_count = " << slice.count
            << (slice.low_confidence ? " (low confidence)" : "") << '\n';
    }
}

void write_histogram_csv(const std::string& path, const Histogram& hist) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "bin_lo,bin_hi,density\n";
    for (long b = 0; b + 1 < hist.edges.size(); ++b)
        out << format_double(hist.edges[b]) << ',' << format_double(hist.edges[b + 1])
            << ',' << format_double(hist.density[b]) << '\n';
}

void write_joint_histogram_csv(const std::string& path, const PosteriorSummary& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "lambda_lo,lambda_hi,I_lo,I_hi,density\n";
    for (long a = 0; a < s.joint_density.rows(); ++a)
        for (long b = 0; b < s.joint_density.cols(); ++b)
            out << format_double(s.joint_lambda_edges[a]) << ','
                << format_double(s.joint_lambda_edges[a + 1]) << ','
                << format_double(s.joint_I_edges[b]) << ','
                << format_double(s.joint_I_edges[b + 1]) << ','
                << format_double(s.joint_density(a, b)) << '\n';
}

std::uint64_t forward_input_hash(const ExperimentConfig& config) {
    Fnv1a h;
    h.add(config.geometry.R);
    h.add(config.geometry.H);
    h.add(config.geometry.z_f);
    h.add(config.geometry.t_f);
    h.add(config.geometry.T);
    h.add(config.geometry.L);
    h.add(config.material.rho);
    h.add(config.material.c_p);
    h.add(config.material.kappa);
    h.add(config.material.T_a);
    h.add(static_cast<std::int64_t>(config.profile.kind));
    h.add(config.profile.r_f);
    h.add(config.h_target);
    h.add(static_cast<std::int64_t>(config.disc.n_t));
    h.add(static_cast<std::int64_t>(config.disc.degree));
    h.add(static_cast<std::int64_t>(config.n_d));
    h.add(config.box.mu_lambda);
    h.add(config.box.nu_lambda);
    h.add(config.box.mu_I);
    h.add(config.box.nu_I);
    return h.value();
}

ForwardSetup build_forward_setup(const ExperimentConfig& config) {
    ForwardSetup setup;
    setup.mesh = build_rect_mesh(config.geometry, config.h_target);
    setup.ops = assemble_operators(setup.mesh, config.geometry, config.material,
                                   config.profile);
    return setup;
}

Eigen::VectorXd measurement_time_grid(const ExperimentConfig& config) {
    return Eigen::VectorXd::LinSpaced(config.n_d, 0.0, config.geometry.T);
}

SgfemSurrogate build_surrogate(const ExperimentConfig& config,
                               const ForwardSetup& setup) {
    const PceBasis basis = build_basis(config.disc.degree);
    SgfemSurrogate sur =
        sgfem_solve(setup.ops, config.material, config.geometry, basis, config.box,
                    config.disc, measurement_time_grid(config));
    sur.input_hash = forward_input_hash(config);
    return sur;
}

}  // namespace lfa

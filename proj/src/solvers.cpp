#include "lfa/solvers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCholesky>

namespace lfa {

void DiscretizationParams::validate() const {
    if (n_t < 1) throw std::invalid_argument("disc.n_t must be >= 1");
    if (!(tau > 0)) throw std::invalid_argument("disc.tau must be positive");
    if (degree < 0) throw std::invalid_argument("disc.degree must be >= 0");
}

SurrogateBox SurrogateBox::from_bounds(double lambda_min, double lambda_max,
                                       double I_min, double I_max) {
    if (!(lambda_max > lambda_min) || !(I_max > I_min))
        throw std::invalid_argument("surrogate box bounds must be non-degenerate");
    const double s3 = std::sqrt(3.0);
    SurrogateBox box;
    box.mu_lambda = 0.5 * (lambda_min + lambda_max);
    box.nu_lambda = 0.5 * (lambda_max - lambda_min) / s3;
    box.mu_I = 0.5 * (I_min + I_max);
    box.nu_I = 0.5 * (I_max - I_min) / s3;
    box.validate();
    return box;
}

double SurrogateBox::lambda_min() const { return mu_lambda - std::sqrt(3.0) * nu_lambda; }
double SurrogateBox::lambda_max() const { return mu_lambda + std::sqrt(3.0) * nu_lambda; }
double SurrogateBox::I_min() const { return mu_I - std::sqrt(3.0) * nu_I; }
double SurrogateBox::I_max() const { return mu_I + std::sqrt(3.0) * nu_I; }

bool SurrogateBox::contains(double lambda, double I) const {
    return lambda >= lambda_min() && lambda <= lambda_max() && I >= I_min() &&
           I <= I_max();
}

void SurrogateBox::validate() const {
    if (!(nu_lambda > 0) || !(nu_I > 0))
        throw std::invalid_argument("box.nu_lambda and box.nu_I must be positive");
    if (!(lambda_min() > 0))
        throw std::invalid_argument("box must keep realizations of lambda positive");
    if (!(I_min() >= 0))
        throw std::invalid_argument("box must keep realizations of I non-negative");
}

bool in_parameter_domain(double y1, double y2) {
    const double lim = std::sqrt(3.0) * (1.0 + 1e-12);
    return std::abs(y1) <= lim && std::abs(y2) <= lim;
}

namespace {

// Fraction of the step interval ((n-1)tau, n*tau] covered by the pulse
// [0, t_f]. Equals the right-endpoint rule s(tau_n) whenever t_f is an
// integer multiple of tau; otherwise the straddling step carries the exact
// overlap so the deposited energy is preserved.
double pulse_weight(int step, double tau, double t_f) {
    const double lo = (step - 1) * tau;
    const double hi = step * tau;
    return std::max(0.0, (std::min(hi, t_f) - lo)) / tau;
}

int measurement_stride(int n_t, int n_d) {
    if (n_d < 2) throw std::invalid_argument("thermogram length must be >= 2");
    if (n_t % (n_d - 1) != 0)
        throw std::invalid_argument("disc.n_t must be a multiple of (n_d - 1)");
    return n_t / (n_d - 1);
}

}  // namespace

Thermogram plain_solve(const FemOperators& ops, const MaterialProperties& material,
                       const ExperimentGeometry& geometry,
                       const DiscretizationParams& disc, double lambda, double I,
                       int n_d) {
    disc.validate();
    material.validate();
    if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
    if (!(I >= 0)) throw std::invalid_argument("I must be non-negative");
    const int stride = measurement_stride(disc.n_t, n_d);

    const double rc = material.rho * material.c_p;
    SparseMat A = rc * ops.M;
    A += (disc.tau * lambda) * ops.K;
    if (material.kappa > 0) A += (disc.tau * material.kappa) * ops.Mb;

    Eigen::SimplicialLLT<SparseMat> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("plain_solve: factorization failed");

    Eigen::VectorXd u = Eigen::VectorXd::Constant(ops.n_h, material.T_a);
    const Eigen::VectorXd robin = material.kappa * material.T_a * ops.b;

    Thermogram out;
    out.times.resize(n_d);
    out.temps.resize(n_d);
    out.times[0] = 0.0;
    out.temps[0] = ops.w.dot(u);

    int m = 1;
    for (int n = 1; n <= disc.n_t; ++n) {
        Eigen::VectorXd rhs = rc * (ops.M * u);
        const double s = pulse_weight(n, disc.tau, geometry.t_f);
        if (s > 0) rhs += (disc.tau * s * I) * ops.f;
        if (material.kappa > 0) rhs += disc.tau * robin;
        u = solver.solve(rhs);
        if (n % stride == 0) {
            out.times[m] = n * disc.tau;
            out.temps[m] = ops.w.dot(u);
            ++m;
        }
    }
    return out;
}

SgfemSurrogate sgfem_solve(const FemOperators& ops, const MaterialProperties& material,
                           const ExperimentGeometry& geometry, const PceBasis& basis,
                           const SurrogateBox& box, const DiscretizationParams& disc,
                           const Eigen::VectorXd& measurement_times) {
    disc.validate();
    material.validate();
    box.validate();
    const int n_d = static_cast<int>(measurement_times.size());
    const int stride = measurement_stride(disc.n_t, n_d);
    for (int j = 0; j < n_d; ++j) {
        const double expect = j * stride * disc.tau;
        if (std::abs(measurement_times[j] - expect) >
            1e-9 * std::max(1.0, std::abs(expect)))
            throw std::invalid_argument(
                "measurement times must coincide with time-step grid points");
    }

    const int n_h = ops.n_h;
    const int n_k = basis.n_k;
    const double rc = material.rho * material.c_p;

    // Block system: diagonal blocks rc*M + tau*(mu_lambda*K + kappa*Mb),
    // off-diagonal blocks tau*nu_lambda*(G1)_js * K.
    SparseMat D = rc * ops.M;
    D += (disc.tau * box.mu_lambda) * ops.K;
    if (material.kappa > 0) D += (disc.tau * material.kappa) * ops.Mb;

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(D.nonZeros()) * n_k +
                 static_cast<std::size_t>(ops.K.nonZeros()) * basis.G1.nonZeros());
    for (int j = 0; j < n_k; ++j) {
        for (int c = 0; c < D.outerSize(); ++c)
            for (SparseMat::InnerIterator it(D, c); it; ++it)
                trip.emplace_back(j * n_h + it.row(), j * n_h + it.col(), it.value());
    }
    const double coup = disc.tau * box.nu_lambda;
    for (int c = 0; c < basis.G1.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator g(basis.G1, c); g; ++g) {
            const int j = static_cast<int>(g.row());
            const int s = static_cast<int>(g.col());
            const double v = coup * g.value();
            for (int kc = 0; kc < ops.K.outerSize(); ++kc)
                for (SparseMat::InnerIterator it(ops.K, kc); it; ++it)
                    trip.emplace_back(j * n_h + it.row(), s * n_h + it.col(),
                                      v * it.value());
        }
    }
    SparseMat A(n_h * n_k, n_h * n_k);
    A.setFromTriplets(trip.begin(), trip.end());
    trip.clear();
    trip.shrink_to_fit();

    Eigen::SimplicialLLT<SparseMat> solver(A);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("sgfem_solve: factorization failed (check box validity)");

    // Source coefficients per basis block: s * (mu_I*e1 + nu_I*G2*e1) x f.
    Eigen::VectorXd src_coeff = Eigen::VectorXd::Zero(n_k);
    src_coeff[0] = box.mu_I;
    for (int c = 0; c < basis.G2.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator g(basis.G2, c); g; ++g)
            if (g.col() == 0) src_coeff[g.row()] += box.nu_I * g.value();

    Eigen::VectorXd U = Eigen::VectorXd::Zero(n_h * n_k);
    U.head(n_h).setConstant(material.T_a);
    const Eigen::VectorXd robin = material.kappa * material.T_a * ops.b;

    SgfemSurrogate sur;
    sur.basis = basis;
    sur.box = box;
    sur.disc = disc;
    sur.times = measurement_times;
    sur.n_h = n_h;
    sur.B.resize(n_d, n_k);

    auto record = [&](int row) {
        for (int j = 0; j < n_k; ++j)
            sur.B(row, j) = ops.w.dot(U.segment(j * n_h, n_h));
    };
    record(0);

    Eigen::VectorXd rhs(n_h * n_k);
    int m = 1;
    for (int n = 1; n <= disc.n_t; ++n) {
        for (int j = 0; j < n_k; ++j)
            rhs.segment(j * n_h, n_h) = rc * (ops.M * U.segment(j * n_h, n_h));
        const double s = pulse_weight(n, disc.tau, geometry.t_f);
        if (s > 0)
            for (int j = 0; j < n_k; ++j)
                if (src_coeff[j] != 0.0)
                    rhs.segment(j * n_h, n_h) += (disc.tau * s * src_coeff[j]) * ops.f;
        if (material.kappa > 0) rhs.head(n_h) += disc.tau * robin;
        U = solver.solve(rhs);
        if (n % stride == 0) record(m++);
    }
    return sur;
}

Thermogram evaluate_surrogate(const SgfemSurrogate& surrogate, double y1, double y2) {
    if (!in_parameter_domain(y1, y2))
        throw std::domain_error("evaluation point outside the parameter domain");
    Thermogram out;
    out.times = surrogate.times;
    out.temps = surrogate.B * eval_basis(surrogate.basis, y1, y2);
    return out;
}

}  // namespace lfa

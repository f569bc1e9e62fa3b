#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "lfa/pce.hpp"

using namespace lfa;

namespace {

const double s3 = std::sqrt(3.0);

// <f g>_rho over Gamma by tensor Gauss quadrature.
template <typename F>
double inner(const F& f, int n_pts) {
    const auto [x, w] = gauss_legendre(n_pts, -s3, s3);
    double acc = 0;
    for (int i = 0; i < n_pts; ++i)
        for (int j = 0; j < n_pts; ++j) acc += w[i] * w[j] * f(x[i], x[j]);
    return acc / (2.0 * s3) / (2.0 * s3);
}

}  // namespace

TEST_CASE("basis dimension (k+1)(k+2)/2") {
    CHECK(build_basis(6).n_k == 28);
    CHECK(build_basis(0).n_k == 1);
    CHECK(build_basis(1).n_k == 3);
    CHECK_THROWS_AS(build_basis(-1), std::invalid_argument);
}

TEST_CASE("k=0 basis is the constant with empty coupling") {
    const PceBasis b = build_basis(0);
    CHECK(eval_basis(b, 0.3, -0.7)[0] == 1.0);
    CHECK(b.G1.nonZeros() == 0);
    CHECK(b.G2.nonZeros() == 0);
}

TEST_CASE("k=1: linear polynomial is the parameter itself, unit variance") {
    const PceBasis b = build_basis(1);
    // index order (0,0), (1,0), (0,1)
    CHECK(b.indices[1][0] == 1);
    const Eigen::VectorXd v = eval_basis(b, 0.42, -1.3);
    CHECK(v[1] == doctest::Approx(0.42).epsilon(1e-15));
    CHECK(v[2] == doctest::Approx(-1.3).epsilon(1e-15));
    // <y1 Psi_1 Psi_(1,0)> = <y1^2> = 1
    CHECK(Eigen::MatrixXd(b.G1)(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("evaluation at the origin: parity") {
    const PceBasis b = build_basis(5);
    const Eigen::VectorXd v = eval_basis(b, 0.0, 0.0);
    CHECK(v[0] == 1.0);
    for (int j = 0; j < b.n_k; ++j)
        if ((b.indices[j][0] + b.indices[j][1]) % 2 == 1) CHECK(v[j] == 0.0);
}

TEST_CASE("evaluation at a domain corner") {
    const PceBasis b = build_basis(1);
    const Eigen::VectorXd v = eval_basis(b, s3, 0.0);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == doctest::Approx(s3).epsilon(1e-15));
    CHECK(v[2] == 0.0);
}

TEST_CASE("orthonormality by quadrature, k=8") {
    const PceBasis b = build_basis(8);
    const auto [x, w] = gauss_legendre(10, -s3, s3);
    double worst = 0;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(b.n_k, b.n_k);
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const Eigen::VectorXd v = eval_basis(b, x[i], x[j]);
            gram += (w[i] * w[j] / 12.0) * v * v.transpose();
        }
    for (int r = 0; r < b.n_k; ++r)
        for (int c = 0; c < b.n_k; ++c)
            worst = std::max(worst, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
    CHECK(worst <= 1e-12);
}

TEST_CASE("coupling matrices match quadrature entrywise") {
    const int k = 5;
    const PceBasis b = build_basis(k);
    const Eigen::MatrixXd G1 = Eigen::MatrixXd(b.G1);
    const Eigen::MatrixXd G2 = Eigen::MatrixXd(b.G2);
    for (int j = 0; j < b.n_k; ++j) {
        for (int s = 0; s < b.n_k; ++s) {
            const double q1 = inner(
                [&](double y1, double y2) {
                    return y1 * eval_basis(b, y1, y2)[j] * eval_basis(b, y1, y2)[s];
                },
                k + 2);
            const double q2 = inner(
                [&](double y1, double y2) {
                    return y2 * eval_basis(b, y1, y2)[j] * eval_basis(b, y1, y2)[s];
                },
                k + 2);
            CHECK(std::abs(G1(j, s) - q1) <= 1e-12);
            CHECK(std::abs(G2(j, s) - q2) <= 1e-12);
        }
    }
}

TEST_CASE("coupling sparsity pattern: neighbours in one component only") {
    const PceBasis b = build_basis(4);
    for (int c = 0; c < b.G1.outerSize(); ++c) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(b.G1, c); it; ++it) {
            const auto& a = b.indices[it.row()];
            const auto& d = b.indices[it.col()];
            CHECK(std::abs(a[0] - d[0]) == 1);
            CHECK(a[1] == d[1]);
        }
    }
}

TEST_CASE("k=2 values match a Gram-Schmidt oracle") {
    // Orthonormalize {1, y1, y2, y1^2, y1 y2, y2^2} under <.,.>_rho by
    // numerically robust modified Gram-Schmidt using quadrature inner products.
    const PceBasis b = build_basis(2);
    const int nb = 6;
    using Fn = std::vector<double>;  // coefficients in the monomial basis
    auto mono = [](int m, double y1, double y2) {
        switch (m) {
            case 0: return 1.0;
            case 1: return y1;
            case 2: return y2;
            case 3: return y1 * y1;
            case 4: return y1 * y2;
            default: return y2 * y2;
        }
    };
    auto eval_comb = [&](const Fn& c, double y1, double y2) {
        double v = 0;
        for (int m = 0; m < nb; ++m) v += c[m] * mono(m, y1, y2);
        return v;
    };
    auto dot = [&](const Fn& a, const Fn& c) {
        return inner([&](double y1, double y2) {
            return eval_comb(a, y1, y2) * eval_comb(c, y1, y2);
        }, 6);
    };

    std::vector<Fn> q;
    for (int m = 0; m < nb; ++m) {
        Fn v(nb, 0.0);
        v[m] = 1.0;
        for (const auto& prev : q) {
            const double proj = dot(prev, v);
            for (int i = 0; i < nb; ++i) v[i] -= proj * prev[i];
        }
        const double nrm = std::sqrt(dot(v, v));
        for (auto& c : v) c /= nrm;
        q.push_back(v);
    }

    // Monomial order happens to match the multi-index order up to sign; fix
    // signs so the leading coefficient is positive, as in the Legendre basis.
    const double y1 = 1.0, y2 = 1.0;
    const Eigen::VectorXd v = eval_basis(b, y1, y2);
    for (int m = 0; m < nb; ++m) {
        double o = eval_comb(q[m], y1, y2);
        if (q[m][m] < 0) o = -o;
        CHECK(v[m] == doctest::Approx(o).epsilon(1e-10));
    }
}

TEST_CASE("recurrence evaluation is stable up to k=20") {
    const PceBasis b = build_basis(20);
    // extended-precision oracle for the univariate recurrence
    auto oracle = [](int deg, long double y) {
        std::vector<long double> p(deg + 1);
        p[0] = 1.0L;
        if (deg > 0) p[1] = y;
        auto c = [](int n) {
            return sqrtl(3.0L) * n / sqrtl((2.0L * n - 1.0L) * (2.0L * n + 1.0L));
        };
        for (int n = 1; n < deg; ++n) p[n + 1] = (y * p[n] - c(n) * p[n - 1]) / c(n + 1);
        return p;
    };
    for (double y : {-s3, -0.9, 0.1, 1.2, s3}) {
        const auto exact = oracle(20, static_cast<long double>(y));
        // degree-graded order: the pure-y1 polynomial of degree d is first in
        // its degree block
        const Eigen::VectorXd v = eval_basis(b, y, 0.0);
        for (int d = 0; d <= 20; ++d) {
            int idx = -1;
            for (int j = 0; j < b.n_k; ++j)
                if (b.indices[j][0] == d && b.indices[j][1] == 0) idx = j;
            REQUIRE(idx >= 0);
            const double expect = static_cast<double>(exact[d]);
            CHECK(v[idx] == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("non-finite evaluation points rejected") {
    const PceBasis b = build_basis(2);
    CHECK_THROWS_AS(eval_basis(b, std::nan(""), 0.0), std::invalid_argument);
}

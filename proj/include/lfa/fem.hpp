#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "lfa/geometry.hpp"

namespace lfa {

struct MaterialProperties {
    double rho = 0;    // density (kg m^-3)
    double c_p = 0;    // specific heat capacity (J kg^-1 K^-1)
    double kappa = 0;  // face heat transfer coefficient (W m^-2 K^-1)
    double T_a = 0;    // ambient temperature (K)

    void validate() const;
};

// Radial shape of the laser source.
struct LaserProfile {
    enum class Kind { Uniform, Gaussian };
    Kind kind = Kind::Uniform;
    double r_f = 0;  // Gaussian width (m)

    static LaserProfile uniform() { return {Kind::Uniform, 0.0}; }
    static LaserProfile gaussian(double r_f);

    double chi(double r) const;
};

using SparseMat = Eigen::SparseMatrix<double>;

// Axisymmetric P1 operators on the half-section. All integrals carry the
// r weight; the common azimuthal factor 2*pi is omitted throughout since it
// cancels in the Galerkin equations and in the disc average.
//
//   M  : mass, unscaled by rho*c_p
//   K  : stiffness, unit conductivity
//   Mb : face (z=0 and z=H) boundary mass, unscaled by kappa
//   b  : face boundary load, unscaled by kappa*T_a
//   f  : source load for unit intensity, spatial part only
//   w  : disc-average functional over r <= L on the top face
struct FemOperators {
    SparseMat M, K, Mb;
    Eigen::VectorXd b, f, w;
    int n_h = 0;
};

FemOperators assemble_operators(const Mesh& mesh, const ExperimentGeometry& geometry,
                                const MaterialProperties& material,
                                const LaserProfile& profile);

}  // namespace lfa

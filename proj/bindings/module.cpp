#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lfa/analysis.hpp"
#include "lfa/bayes.hpp"
#include "lfa/io.hpp"

namespace py = pybind11;
using namespace lfa;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Laser-flash Bayesian inference with an SGFEM surrogate";

    py::class_<ExperimentGeometry>(m, "ExperimentGeometry")
        .def(py::init<>())
        .def_readwrite("R", &ExperimentGeometry::R)
        .def_readwrite("H", &ExperimentGeometry::H)
        .def_readwrite("z_f", &ExperimentGeometry::z_f)
        .def_readwrite("t_f", &ExperimentGeometry::t_f)
        .def_readwrite("T", &ExperimentGeometry::T)
        .def_readwrite("L", &ExperimentGeometry::L)
        .def("validate", &ExperimentGeometry::validate);

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("vertices", &Mesh::vertices)
        .def_readonly("triangles", &Mesh::triangles)
        .def_readonly("h", &Mesh::h)
        .def_property_readonly("n_vertices", &Mesh::n_vertices)
        .def_property_readonly("n_triangles", &Mesh::n_triangles);

    py::class_<MaterialProperties>(m, "MaterialProperties")
        .def(py::init<>())
        .def_readwrite("rho", &MaterialProperties::rho)
        .def_readwrite("c_p", &MaterialProperties::c_p)
        .def_readwrite("kappa", &MaterialProperties::kappa)
        .def_readwrite("T_a", &MaterialProperties::T_a);

    py::class_<LaserProfile>(m, "LaserProfile")
        .def_static("uniform", &LaserProfile::uniform)
        .def_static("gaussian", &LaserProfile::gaussian, py::arg("r_f"))
        .def("chi", &LaserProfile::chi, py::arg("r"));

    py::class_<FemOperators>(m, "FemOperators")
        .def_readonly("M", &FemOperators::M)
        .def_readonly("K", &FemOperators::K)
        .def_readonly("Mb", &FemOperators::Mb)
        .def_readonly("b", &FemOperators::b)
        .def_readonly("f", &FemOperators::f)
        .def_readonly("w", &FemOperators::w)
        .def_readonly("n_h", &FemOperators::n_h);

    py::class_<PceBasis>(m, "PceBasis")
        .def_readonly("degree", &PceBasis::degree)
        .def_readonly("n_k", &PceBasis::n_k)
        .def_readonly("indices", &PceBasis::indices)
        .def_readonly("G1", &PceBasis::G1)
        .def_readonly("G2", &PceBasis::G2);

    py::class_<DiscretizationParams>(m, "DiscretizationParams")
        .def(py::init<>())
        .def_readwrite("n_t", &DiscretizationParams::n_t)
        .def_readwrite("tau", &DiscretizationParams::tau)
        .def_readwrite("degree", &DiscretizationParams::degree);

    py::class_<SurrogateBox>(m, "SurrogateBox")
        .def(py::init<>())
        .def_static("from_bounds", &SurrogateBox::from_bounds, py::arg("lambda_min"),
                    py::arg("lambda_max"), py::arg("I_min"), py::arg("I_max"))
        .def_readwrite("mu_lambda", &SurrogateBox::mu_lambda)
        .def_readwrite("nu_lambda", &SurrogateBox::nu_lambda)
        .def_readwrite("mu_I", &SurrogateBox::mu_I)
        .def_readwrite("nu_I", &SurrogateBox::nu_I)
        .def("contains", &SurrogateBox::contains, py::arg("lam"), py::arg("I"));

    py::class_<Thermogram>(m, "Thermogram")
        .def(py::init<>())
        .def_readwrite("times", &Thermogram::times)
        .def_readwrite("temps", &Thermogram::temps);

    py::class_<SgfemSurrogate>(m, "SgfemSurrogate")
        .def_readonly("basis", &SgfemSurrogate::basis)
        .def_readonly("box", &SgfemSurrogate::box)
        .def_readonly("times", &SgfemSurrogate::times)
        .def_readonly("B", &SgfemSurrogate::B)
        .def_readonly("n_h", &SgfemSurrogate::n_h);

    py::class_<PriorSpec>(m, "PriorSpec")
        .def(py::init<>())
        .def_readwrite("m_lambda", &PriorSpec::m_lambda)
        .def_readwrite("s_lambda", &PriorSpec::s_lambda)
        .def_readwrite("alpha_sigma", &PriorSpec::alpha_sigma)
        .def_readwrite("beta_sigma", &PriorSpec::beta_sigma);

    py::class_<Theta>(m, "Theta")
        .def(py::init<>())
        .def(py::init([](double t1, double t2) { return Theta{t1, t2}; }),
             py::arg("theta1"), py::arg("theta2"))
        .def_readwrite("theta1", &Theta::theta1)
        .def_readwrite("theta2", &Theta::theta2);

    py::class_<ChainConfig>(m, "ChainConfig")
        .def(py::init<>())
        .def_readwrite("M", &ChainConfig::M)
        .def_readwrite("n_burn", &ChainConfig::n_burn)
        .def_readwrite("thin", &ChainConfig::thin)
        .def_readwrite("beta", &ChainConfig::beta)
        .def_readwrite("seed", &ChainConfig::seed)
        .def_readwrite("theta0", &ChainConfig::theta0);

    py::class_<ChainSample>(m, "ChainSample")
        .def_readonly("theta", &ChainSample::theta)
        .def_readonly("accepted", &ChainSample::accepted)
        .def_readonly("used_surrogate", &ChainSample::used_surrogate);

    py::class_<Chain>(m, "Chain")
        .def_readonly("samples", &Chain::samples)
        .def_readonly("accepted", &Chain::accepted)
        .def_readonly("proposed", &Chain::proposed)
        .def_readonly("fallback_count", &Chain::fallback_count)
        .def("acceptance_rate", &Chain::acceptance_rate)
        .def("thetas", [](const Chain& c) {
            Eigen::MatrixXd out(c.samples.size(), 2);
            for (std::size_t i = 0; i < c.samples.size(); ++i) {
                out(i, 0) = c.samples[i].theta.theta1;
                out(i, 1) = c.samples[i].theta.theta2;
            }
            return out;
        });

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("edges", &Histogram::edges)
        .def_readonly("density", &Histogram::density);

    py::class_<PosteriorSummary>(m, "PosteriorSummary")
        .def_readonly("mean_lambda", &PosteriorSummary::mean_lambda)
        .def_readonly("sd_lambda", &PosteriorSummary::sd_lambda)
        .def_readonly("mean_I", &PosteriorSummary::mean_I)
        .def_readonly("sd_I", &PosteriorSummary::sd_I)
        .def_readonly("corr_lambda_I", &PosteriorSummary::corr_lambda_I)
        .def_readonly("corr_defined", &PosteriorSummary::corr_defined)
        .def_readonly("mean_alpha", &PosteriorSummary::mean_alpha)
        .def_readonly("sd_alpha", &PosteriorSummary::sd_alpha)
        .def_readonly("lambda_hist", &PosteriorSummary::lambda_hist)
        .def_readonly("I_hist", &PosteriorSummary::I_hist)
        .def_readonly("n_samples", &PosteriorSummary::n_samples);

    m.def("build_rect_mesh", &build_rect_mesh, py::arg("geometry"), py::arg("h_target"));
    m.def("assemble_operators", &assemble_operators, py::arg("mesh"),
          py::arg("geometry"), py::arg("material"), py::arg("profile"));
    m.def("build_basis", &build_basis, py::arg("degree"));
    m.def("eval_basis", &eval_basis, py::arg("basis"), py::arg("y1"), py::arg("y2"));
    m.def("plain_solve", &plain_solve, py::arg("ops"), py::arg("material"),
          py::arg("geometry"), py::arg("disc"), py::arg("lam"), py::arg("I"),
          py::arg("n_d"));
    m.def("sgfem_solve", &sgfem_solve, py::arg("ops"), py::arg("material"),
          py::arg("geometry"), py::arg("basis"), py::arg("box"), py::arg("disc"),
          py::arg("measurement_times"));
    m.def("evaluate_surrogate", &evaluate_surrogate, py::arg("surrogate"),
          py::arg("y1"), py::arg("y2"));
    m.def("lognormal_hyperparams", &lognormal_hyperparams, py::arg("mu"),
          py::arg("sigma"));
    m.def("log_prior", &log_prior, py::arg("theta"), py::arg("prior"));
    m.def("log_marginal_likelihood", &log_marginal_likelihood, py::arg("d"),
          py::arg("g"), py::arg("prior"));
    m.def("potential", &potential, py::arg("d"), py::arg("g"), py::arg("sigma2"));
    m.def("zeta", &zeta, py::arg("box"), py::arg("y1"), py::arg("y2"));
    m.def("zeta_inv", &zeta_inv, py::arg("box"), py::arg("lam"), py::arg("I"));

    // RWMH driven by a python callable returning (log_density, used_surrogate)
    // or a bare float.
    m.def("rwmh",
          [](const py::function& target, const ChainConfig& config) {
              LogTargetFn fn = [&target](const Theta& th) {
                  py::object r = target(th.theta1, th.theta2);
                  TargetEval ev;
                  if (py::isinstance<py::tuple>(r)) {
                      auto t = r.cast<py::tuple>();
                      ev.log_density = t[0].cast<double>();
                      ev.used_surrogate = t[1].cast<bool>();
                  } else {
                      ev.log_density = r.cast<double>();
                      ev.used_surrogate = true;
                  }
                  return ev;
              };
              if (!config.theta0)
                  throw std::invalid_argument(
                      "rwmh with a python target requires an explicit theta0");
              return rwmh(fn, config, {});
          },
          py::arg("log_target"), py::arg("config"));

    py::class_<SummaryOptions>(m, "SummaryOptions")
        .def(py::init<>())
        .def_readwrite("bins", &SummaryOptions::bins)
        .def_readwrite("joint_bins", &SummaryOptions::joint_bins)
        .def_readwrite("I_windows", &SummaryOptions::I_windows);
    m.def("summarize", &summarize, py::arg("chain"), py::arg("material"),
          py::arg("options") = SummaryOptions{});

    m.def("save_surrogate", &save_surrogate, py::arg("path"), py::arg("surrogate"));
    m.def("load_surrogate", &load_surrogate, py::arg("path"));
    m.def("load_config", &load_config, py::arg("path"));
    m.def("read_thermogram", &read_thermogram, py::arg("path"));
    m.def("write_thermogram", &write_thermogram, py::arg("path"), py::arg("t"));
}

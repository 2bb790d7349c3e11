#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "quasiphase/clicks.hpp"
#include "quasiphase/convolution.hpp"
#include "quasiphase/entquasi.hpp"
#include "quasiphase/hybrid.hpp"
#include "quasiphase/io.hpp"
#include "quasiphase/phasespace.hpp"

namespace py = pybind11;
using namespace quasiphase;

namespace {

Eigen::MatrixXd grid_matrix(const RealGrid& g) {
    Eigen::MatrixXd m(g.im_axis.count, g.re_axis.count);
    for (int iy = 0; iy < g.im_axis.count; ++iy)
        for (int ix = 0; ix < g.re_axis.count; ++ix) m(iy, ix) = g.at(iy, ix);
    return m;
}

Eigen::MatrixXcd grid_matrix_c(const ComplexGrid& g) {
    Eigen::MatrixXcd m(g.im_axis.count, g.re_axis.count);
    for (int iy = 0; iy < g.im_axis.count; ++iy)
        for (int ix = 0; ix < g.re_axis.count; ++ix) m(iy, ix) = g.at(iy, ix);
    return m;
}

RealGrid grid_from_matrix(const Eigen::MatrixXd& m, const Axis& re, const Axis& im) {
    if (m.rows() != im.count || m.cols() != re.count)
        throw std::invalid_argument("matrix shape must match axes");
    RealGrid g(re, im);
    for (int iy = 0; iy < im.count; ++iy)
        for (int ix = 0; ix < re.count; ++ix) g.at(iy, ix) = m(iy, ix);
    return g;
}

KernelSpec make_kernel(const std::string& kind, double param) {
    if (kind == "sinc2") return KernelSpec::sinc2_kernel(param);
    if (kind == "gauss") return KernelSpec::gaussian_kernel(param);
    throw std::invalid_argument("kernel kind must be 'sinc2' or 'gauss'");
}

CoherentSuperposition make_state(const std::string& kind, cplx beta) {
    if (kind == "coherent") return CoherentSuperposition::coherent(beta);
    if (kind == "even-cat") return CoherentSuperposition::even_cat(beta);
    if (kind == "odd-cat") return CoherentSuperposition::odd_cat(beta);
    throw std::invalid_argument("state kind must be 'coherent', 'even-cat' or 'odd-cat'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "regularized phase-space quasiprobability toolkit";

    py::class_<Axis>(m, "Axis")
        .def(py::init<double, double, int>(), py::arg("min"), py::arg("max"), py::arg("count"))
        .def_readonly("min", &Axis::min)
        .def_readonly("max", &Axis::max)
        .def_readonly("count", &Axis::count)
        .def("spacing", &Axis::spacing)
        .def("at", &Axis::at);

    // Fock-space core
    m.def("coherent_fock",
          [](cplx beta, int cutoff) {
              FockVector v = coherent_fock(beta, cutoff);
              return py::make_tuple(Eigen::VectorXcd(v.amplitudes), v.truncation_loss());
          },
          py::arg("beta"), py::arg("cutoff"), "amplitudes and truncation loss");
    m.def("overlap", &overlap, py::arg("bra"), py::arg("ket"));
    m.def("recommended_cutoff", &recommended_cutoff, py::arg("mean_photons"));
    m.def("superposition_density",
          [](const std::string& kind, cplx beta, int cutoff) {
              return Eigen::MatrixXcd(superposition_density(make_state(kind, beta), cutoff).entries);
          },
          py::arg("kind"), py::arg("beta"), py::arg("cutoff"));
    m.def("thermal_density",
          [](double nbar, int cutoff) { return Eigen::MatrixXcd(thermal_density(nbar, cutoff).entries); },
          py::arg("nbar"), py::arg("cutoff"));
    m.def("spats_density",
          [](double nbar, int cutoff) { return Eigen::MatrixXcd(spats_density(nbar, cutoff).entries); },
          py::arg("nbar"), py::arg("cutoff"));
    m.def("husimi_fock",
          [](const Eigen::MatrixXcd& rho, cplx alpha) {
              DensityMatrix dm;
              dm.entries = rho;
              dm.cutoff = static_cast<int>(rho.rows()) - 1;
              return husimi_fock(dm, alpha);
          },
          py::arg("rho"), py::arg("alpha"));
    m.def("fidelity",
          [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return fidelity(a, b); },
          py::arg("psi"), py::arg("phi"));

    // analytic phase-space distributions
    m.def("sinc2_complex", &sinc2_complex, py::arg("u"));
    m.def("interference_term", [](cplx ket, cplx bra) {
        DeltaTerm t = interference_term(ket, bra);
        return py::make_tuple(t.prefactor, t.support_re, t.support_im);
    }, py::arg("ket"), py::arg("bra"), "prefactor and complex supports of |ket><bra|");
    m.def("characteristic_fn", &characteristic_fn, py::arg("ket"), py::arg("bra"), py::arg("freq"));
    m.def("regularized_delta",
          [](cplx ket, cplx bra, const std::string& kind, double param, cplx alpha) {
              return regularized_delta(interference_term(ket, bra), make_kernel(kind, param), alpha);
          },
          py::arg("ket"), py::arg("bra"), py::arg("kernel"), py::arg("param"), py::arg("alpha"));
    m.def("spats_p", &spats_p, py::arg("nbar"), py::arg("alpha"));
    m.def("thermal_p", &thermal_p, py::arg("nbar"), py::arg("alpha"));
    m.def("spats_p_gauss", &spats_p_gauss, py::arg("nbar"), py::arg("s"), py::arg("alpha"));
    m.def("state_p",
          [](const std::string& state_kind, cplx beta, const std::string& kernel, double param,
             cplx alpha) {
              const StateP p = StateP::from_superposition(make_state(state_kind, beta));
              return state_p_regularized(p, make_kernel(kernel, param), alpha);
          },
          py::arg("state"), py::arg("beta"), py::arg("kernel"), py::arg("param"), py::arg("alpha"));
    m.def("state_p_grid",
          [](const std::string& state_kind, cplx beta, const std::string& kernel, double param,
             const Axis& re, const Axis& im) {
              const StateP p = StateP::from_superposition(make_state(state_kind, beta));
              const KernelSpec k = make_kernel(kernel, param);
              return grid_matrix(
                  eval_grid(re, im, [&](cplx a) { return state_p_regularized(p, k, a); }));
          },
          py::arg("state"), py::arg("beta"), py::arg("kernel"), py::arg("param"), py::arg("re"),
          py::arg("im"), "row-major (im, re) matrix of the regularized distribution");

    // grid convolution engine
    m.def("convolve",
          [](const Eigen::MatrixXd& f, const Axis& re, const Axis& im, const std::string& kernel,
             double param) { return grid_matrix(convolve(grid_from_matrix(f, re, im), make_kernel(kernel, param))); },
          py::arg("values"), py::arg("re"), py::arg("im"), py::arg("kernel"), py::arg("param"));
    m.def("deconvolve",
          [](const Eigen::MatrixXd& f, const Axis& re, const Axis& im, const std::string& kernel,
             double param, double cutoff_eps) {
              return grid_matrix(
                  deconvolve(grid_from_matrix(f, re, im), make_kernel(kernel, param), cutoff_eps));
          },
          py::arg("values"), py::arg("re"), py::arg("im"), py::arg("kernel"), py::arg("param"),
          py::arg("cutoff_eps"));
    m.def("integrate_grid",
          [](const Eigen::MatrixXd& f, const Axis& re, const Axis& im) {
              return integrate(grid_from_matrix(f, re, im));
          },
          py::arg("values"), py::arg("re"), py::arg("im"));

    // click detection
    py::class_<DetectionConfig>(m, "DetectionConfig")
        .def_static("balanced", &DetectionConfig::balanced, py::arg("n_detectors"), py::arg("eta"),
                    py::arg("t"), py::arg("z"))
        .def_readonly("n_detectors", &DetectionConfig::n_detectors)
        .def_readonly("eta", &DetectionConfig::eta)
        .def_readonly("t", &DetectionConfig::t)
        .def_readonly("r", &DetectionConfig::r)
        .def_readonly("z", &DetectionConfig::z);
    m.def("g_vac", &g_vac, py::arg("alpha"), py::arg("cfg"));
    m.def("g_interference", &g_interference, py::arg("alpha"), py::arg("bra"), py::arg("ket"),
          py::arg("cfg"));
    m.def("g_state",
          [](const std::string& kind, cplx beta, cplx alpha, const DetectionConfig& cfg) {
              return g_state(make_state(kind, beta), alpha, cfg);
          },
          py::arg("state"), py::arg("beta"), py::arg("alpha"), py::arg("cfg"));
    m.def("fock_click_oracle",
          [](const Eigen::MatrixXcd& rho, cplx alpha, const DetectionConfig& cfg) {
              DensityMatrix dm;
              dm.entries = rho;
              dm.cutoff = static_cast<int>(rho.rows()) - 1;
              return fock_click_oracle(dm, alpha, cfg);
          },
          py::arg("rho"), py::arg("alpha"), py::arg("cfg"));
    m.def("thermal_g_quadrature", &thermal_g_quadrature, py::arg("nbar"), py::arg("alpha"),
          py::arg("cfg"), py::arg("order") = 48);
    m.def("monte_carlo_g",
          [](const std::string& kind, cplx beta, double nbar, cplx alpha, const DetectionConfig& cfg,
             long long shots, uint64_t seed) {
              const ClassicalState state =
                  kind == "thermal" ? ClassicalState::thermal(nbar) : ClassicalState::coherent(beta);
              const MonteCarloEstimate est = monte_carlo_g(state, alpha, cfg, shots, seed);
              return py::make_tuple(est.value, est.std_error);
          },
          py::arg("state"), py::arg("beta"), py::arg("nbar"), py::arg("alpha"), py::arg("cfg"),
          py::arg("shots"), py::arg("seed"));

    // hybrid and multimode
    m.def("hybrid_matrix",
          [](cplx beta, const std::string& kernel, double param, cplx alpha) {
              return Eigen::Matrix2cd(hybrid_matrix(beta, make_kernel(kernel, param), alpha));
          },
          py::arg("beta"), py::arg("kernel"), py::arg("param"), py::arg("alpha"));
    m.def("min_eig_scan",
          [](cplx beta, const std::string& kernel, double param, const Axis& re, const Axis& im,
             bool zero_offdiag) {
              const MinEigResult r = min_eig_scan(beta, make_kernel(kernel, param), re, im, zero_offdiag);
              return py::make_tuple(r.alpha_star, r.lambda_min);
          },
          py::arg("beta"), py::arg("kernel"), py::arg("param"), py::arg("re"), py::arg("im"),
          py::arg("zero_offdiag") = false);
    m.def("tripartite_p",
          [](cplx beta, const std::string& kernel, double param, cplx a1, cplx a2, cplx a3) {
              return tripartite_p(beta, make_kernel(kernel, param), a1, a2, a3);
          },
          py::arg("beta"), py::arg("kernel"), py::arg("param"), py::arg("a1"), py::arg("a2"),
          py::arg("a3"));
    m.def("ghz_w_limits",
          [](double beta_small, double beta_large, int cutoff) {
              const GhzWLimits l = ghz_w_limits(beta_small, beta_large, cutoff);
              return py::make_tuple(l.w_fidelity, l.ghz_cross);
          },
          py::arg("beta_small"), py::arg("beta_large"), py::arg("cutoff") = 24);

    // entanglement quasiprobabilities
    m.def("ent_quasiprob",
          [](const Eigen::Matrix4cd& rho, const std::string& mode) {
              TwoQubitState state{rho};
              const EntQuasiTable table = ent_quasiprob(
                  state, mode == "min-norm" ? EntSolveMode::min_norm : EntSolveMode::nnls_first);
              return py::make_tuple(Eigen::MatrixXd(table.values), table.residual);
          },
          py::arg("rho"), py::arg("mode") = "nnls");
    m.def("singlet", [] { return Eigen::Matrix4cd(TwoQubitState::singlet().rho); });
    m.def("werner", [](double p) { return Eigen::Matrix4cd(TwoQubitState::werner(p).rho); },
          py::arg("p"));
    m.def("pauli_labels", [] {
        std::vector<std::string> labels(kPauliLabels.begin(), kPauliLabels.end());
        return labels;
    });

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}

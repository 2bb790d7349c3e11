#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quasiphase/fock.hpp"

using namespace quasiphase;

TEST_CASE("coherent expansion") {
    SUBCASE("vacuum") {
        const FockVector v = coherent_fock(0.0, 4);
        CHECK(v.amplitudes(0) == cplx(1.0));
        for (int n = 1; n <= 4; ++n) CHECK(std::abs(v.amplitudes(n)) == 0.0);
    }
    SUBCASE("unit amplitude") {
        const FockVector v = coherent_fock(1.0, 40);
        CHECK(v.amplitudes(0).real() == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
        CHECK(v.truncation_loss() < 1e-12);
        CHECK(std::abs(v.norm() - 1.0) < 1e-12);
    }
    SUBCASE("insufficient cutoff is flagged") {
        const FockVector v = coherent_fock(cplx(0, 2), 5);
        // Poisson tail beyond n=5 at |b|^2 = 4, summed directly
        double kept = 0.0, term = std::exp(-4.0);
        for (int n = 0; n <= 5; ++n) {
            kept += term;
            term *= 4.0 / (n + 1);
        }
        CHECK(v.truncation_loss() == doctest::Approx(1.0 - kept).epsilon(1e-12));
        CHECK(v.truncation_loss() > 1e-3);
        CHECK_FALSE(v.cutoff_adequate());
    }
    SUBCASE("rejects non-finite amplitude") {
        CHECK_THROWS_AS(coherent_fock(cplx(std::nan(""), 0), 4), std::invalid_argument);
        CHECK_THROWS_AS(coherent_fock(1.0, -1), std::invalid_argument);
    }
    SUBCASE("recommended cutoff keeps the tail tiny") {
        for (double mu : {0.5, 2.0, 6.0}) {
            const FockVector v = coherent_fock(std::sqrt(mu), recommended_cutoff(mu));
            CHECK(v.truncation_loss() < 1e-10);
        }
    }
}

TEST_CASE("coherent overlap") {
    const cplx b(0.7, 0.2);
    CHECK(std::abs(overlap(b, b) - cplx(1.0)) < 1e-15);
    CHECK(overlap(1.0, -1.0).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(std::abs(overlap(1.0, -1.0).imag()) < 1e-15);

    const cplx v = overlap(1.0, cplx(0, 1));
    CHECK(std::abs(v) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::arg(v) == doctest::Approx(1.0).epsilon(1e-14));

    oracles::Rand rng(11);
    for (int i = 0; i < 50; ++i) {
        const cplx x = rng.complex_in(3.0), y = rng.complex_in(3.0);
        CHECK(std::abs(overlap(x, y) - std::conj(overlap(y, x))) < 1e-14);
        CHECK(std::abs(overlap(x, y)) <= 1.0 + 1e-14);
        // consistency with the Fock contraction
        const cplx fock = coherent_fock(x, 60).amplitudes.adjoint() *
                          coherent_fock(y, 60).amplitudes;
        CHECK(std::abs(overlap(x, y) - fock) < 1e-10);
    }
}

TEST_CASE("superposition density") {
    SUBCASE("single term is a projector") {
        const DensityMatrix rho = superposition_density(CoherentSuperposition::coherent(0.0), 6);
        CHECK(std::abs(rho.entries(0, 0) - cplx(1.0)) < 1e-15);
        CHECK(rho.trace_deviation() < 1e-15);
    }
    SUBCASE("even cat has no odd components") {
        const DensityMatrix rho = superposition_density(CoherentSuperposition::even_cat(1.0), 40);
        CHECK(std::abs(rho.entries(1, 1)) < 1e-15);
        CHECK(std::abs(rho.entries(3, 3)) < 1e-15);
        CHECK(rho.trace_deviation() < 1e-10);
    }
    SUBCASE("two-branch state normalizes") {
        const CoherentSuperposition state = CoherentSuperposition::normalized_from(
            {{cplx(1.0), cplx(1.0)}, {cplx(1.0), cplx(-1.0)}});
        CHECK(std::abs(state.gram_norm() - cplx(1.0)) < 1e-12);
        const DensityMatrix rho = superposition_density(state, 40);
        CHECK(rho.trace_deviation() < 1e-12);
        CHECK(rho.hermiticity_residual() < 1e-12);
        CHECK(rho.min_eigenvalue() > -1e-10);
    }
    SUBCASE("coincident amplitudes rejected") {
        CoherentSuperposition bad;
        bad.terms = {{cplx(0.5), cplx(1.0)}, {cplx(0.5), cplx(1.0)}};
        CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
        CHECK_THROWS_AS(CoherentSuperposition::even_cat(0.0), std::invalid_argument);
    }
    SUBCASE("empty term list rejected") {
        CoherentSuperposition empty;
        CHECK_THROWS_AS(superposition_density(empty, 10), std::invalid_argument);
    }
}

TEST_CASE("photon-added thermal state") {
    const DensityMatrix rho = spats_density(1.0, 60);
    CHECK(std::abs(rho.entries(0, 0)) == 0.0);  // photon addition empties the vacuum
    CHECK(rho.trace_deviation() < 1e-10);
    // level populations from the independent (n+1) t_n / (1+nbar) rule
    const double t0 = 0.5;  // thermal weight of |0><0| at nbar = 1
    CHECK(rho.entries(1, 1).real() == doctest::Approx((0 + 1) * t0 / 2.0).epsilon(1e-14));
    CHECK(rho.entries(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(spats_density(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(spats_density(-1.0, 10), std::invalid_argument);
}

TEST_CASE("husimi oracle") {
    DensityMatrix vac = DensityMatrix::zero(10);
    vac.entries(0, 0) = 1.0;
    CHECK(husimi_fock(vac, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));

    const cplx b(0.8, -0.4);
    const DensityMatrix proj = superposition_density(CoherentSuperposition::coherent(b), 40);
    CHECK(husimi_fock(proj, b) == doctest::Approx(1.0 / kPi).epsilon(1e-12));

    // pairing rule: Tr(rho |g><g|) = pi * Q(g)
    oracles::Rand rng(12);
    const DensityMatrix cat = superposition_density(CoherentSuperposition::even_cat(1.0), 60);
    for (int i = 0; i < 20; ++i) {
        const cplx g = rng.complex_in(2.0);
        const Eigen::VectorXcd ket = coherent_fock(g, 60).amplitudes;
        const double direct = (ket.adjoint() * cat.entries * ket)(0).real();
        CHECK(direct == doctest::Approx(kPi * husimi_fock(cat, g)).epsilon(1e-10));
        CHECK(husimi_fock(cat, g) > -1e-12);
    }
}

TEST_CASE("displacement") {
    SUBCASE("vacuum maps to a coherent projector") {
        DensityMatrix vac = DensityMatrix::zero(40);
        vac.entries(0, 0) = 1.0;
        for (cplx g : {cplx(1.0, 0.5), cplx(-2.0, 0.0), cplx(0.0, 1.4)}) {
            const DensityMatrix moved = displace(vac, g);
            const DensityMatrix target = superposition_density(CoherentSuperposition::coherent(g), 40);
            CHECK((moved.entries - target.entries).cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SUBCASE("zero displacement is the identity") {
        const DensityMatrix cat = superposition_density(CoherentSuperposition::even_cat(1.0), 30);
        const DensityMatrix same = displace(cat, 0.0);
        CHECK((same.entries - cat.entries).cwiseAbs().maxCoeff() < 1e-13);
    }
    SUBCASE("round trip") {
        const DensityMatrix cat = superposition_density(CoherentSuperposition::even_cat(1.0), 50);
        const DensityMatrix back = displace(displace(cat, cplx(0.7, -0.3)), cplx(-0.7, 0.3));
        CHECK((back.entries - cat.entries).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("truncation pressure raises the warning flag") {
        DensityMatrix vac = DensityMatrix::zero(8);
        vac.entries(0, 0) = 1.0;
        CHECK(displace(vac, cplx(3.0, 0.0)).truncation_warning);
        CHECK_FALSE(displace(vac, cplx(0.1, 0.0)).truncation_warning);
    }
}

TEST_CASE("loss channel") {
    const DensityMatrix cat = superposition_density(CoherentSuperposition::even_cat(1.2), 40);
    SUBCASE("full transmission is the identity") {
        const DensityMatrix same = loss_channel(cat, 1.0);
        CHECK((same.entries - cat.entries).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("coherent covariance") {
        const cplx b(1.1, -0.6);
        const double tau = 0.37;
        const DensityMatrix in = superposition_density(CoherentSuperposition::coherent(b), 40);
        const DensityMatrix out = loss_channel(in, tau);
        const DensityMatrix target =
            superposition_density(CoherentSuperposition::coherent(std::sqrt(tau) * b), 40);
        CHECK((out.entries - target.entries).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("thermal maps to attenuated thermal") {
        const DensityMatrix out = loss_channel(thermal_density(1.4, 60), 0.5);
        const DensityMatrix target = thermal_density(0.7, 60);
        CHECK((out.entries - target.entries).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("composition multiplies transmissivities") {
        const DensityMatrix two_step = loss_channel(loss_channel(cat, 0.8), 0.5);
        const DensityMatrix direct = loss_channel(cat, 0.4);
        CHECK((two_step.entries - direct.entries).cwiseAbs().maxCoeff() < 1e-10);
    }
    SUBCASE("trace preserved") {
        CHECK(loss_channel(cat, 0.63).trace_deviation() < 1e-12);
    }
    CHECK_THROWS_AS(loss_channel(cat, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(loss_channel(cat, -0.1), std::invalid_argument);
}

TEST_CASE("fidelity") {
    const FockVector a = coherent_fock(1.0, 50);
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::VectorXcd n1 = Eigen::VectorXcd::Zero(5), n2 = Eigen::VectorXcd::Zero(5);
    n1(1) = 1.0;
    n2(2) = 1.0;
    CHECK(fidelity(n1, n2) == 0.0);

    const FockVector minus = coherent_fock(-1.0, 50);
    CHECK(fidelity(minus, a) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));

    Eigen::VectorXcd short_vec = Eigen::VectorXcd::Zero(3);
    CHECK_THROWS_AS(fidelity(n1, short_vec), std::invalid_argument);
}

TEST_CASE("phase flip negates coherent amplitudes") {
    const cplx b(0.9, 0.4);
    const DensityMatrix flipped =
        phase_flip(superposition_density(CoherentSuperposition::coherent(b), 40));
    const DensityMatrix target = superposition_density(CoherentSuperposition::coherent(-b), 40);
    CHECK((flipped.entries - target.entries).cwiseAbs().maxCoeff() < 1e-13);
}

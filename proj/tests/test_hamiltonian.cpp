#include <doctest.h>

#include <cmath>

#include "jacobi.hpp"
#include "qno/eigensolver.hpp"
#include "qno/errors.hpp"
#include "qno/hamiltonian.hpp"

using namespace qno;

namespace {

CoupledModel model(OscKind kind, double li, double omega, double eps, double gbar,
                   const ModelVariant& variant, int n) {
    return CoupledModel{QubitSpec(1.0, eps), OscillatorSpec(kind, li, omega, n), gbar, variant};
}

} // namespace

TEST_CASE("qubit spec") {
    CHECK_THROWS_AS(QubitSpec(0.0, 0.1), DomainError);
    const QubitSpec q(1.0, 0.5);
    CHECK(q.splitting() == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
    const double wz = q.sigma_z_weight(), wx = q.sigma_x_weight();
    CHECK(wz * wz + wx * wx == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("uncoupled limit is exactly block diagonal") {
    const CoupledModel m = model(OscKind::Tpt, 0.025, 1.0, 0.3, 0.0, ModelVariant::extended(3), 20);
    const OperatorMatrix h = build_hamiltonian(m);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) CHECK(h(i, 20 + j) == 0.0);

    const SpectrumResult s = eigh(h);
    const std::vector<double> expected = uncoupled_levels(m, 12);
    for (int k = 0; k < 12; ++k) CHECK(std::abs(s.values[k] - expected[k]) < 1e-9);
}

TEST_CASE("unbiased qubit removes the sigma_z coupling") {
    const CoupledModel m = model(OscKind::Tpt, 0.025, 1.0, 0.0, 0.7, ModelVariant::extended(3), 16);
    const OperatorMatrix h = build_hamiltonian(m);
    const OperatorMatrix h_osc = number_hamiltonian(m.osc);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) {
            const double expected = h_osc(i, j) + (i == j ? 0.5 : 0.0);
            CHECK(h(i, j) == doctest::Approx(expected).epsilon(1e-14)); // e-block untouched
        }
}

TEST_CASE("parity symmetry at zero bias") {
    // The conserved parity is sigma_x (x) (-1)^n in the localized qubit basis;
    // in the energy eigenbasis used here that operator is sigma~_z (x) (-1)^n.
    for (OscKind kind : {OscKind::Tpt, OscKind::Mpt}) {
        const int n = 18;
        const CoupledModel m = model(kind, 0.025, 0.9, 0.0, 1.1, ModelVariant::extended(3), n);
        const OperatorMatrix h = build_hamiltonian(m);
        Matrix parity(2 * n, 2 * n);
        for (int k = 0; k < n; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            parity(k, k) = sign;
            parity(n + k, n + k) = -sign;
        }
        CHECK(max_abs(h.data() * parity - parity * h.data()) < 1e-12);

        // the flipped-parity blocks decouple exactly: <e,n|H|g,m> = 0 for n+m even
        for (int a = 0; a < n; ++a)
            for (int bcol = 0; bcol < n; ++bcol)
                if ((a + bcol) % 2 == 0) CHECK(h(a, n + bcol) == 0.0);
    }
}

TEST_CASE("quantum Rabi regression against an independent construction") {
    const int n = 40;
    const double gbar = 0.2;
    const CoupledModel m = model(OscKind::Tpt, 0.0, 1.0, 0.0, gbar, ModelVariant::extended(1), n);
    const SpectrumResult ours = eigh(build_hamiltonian(m));

    // Hand-built Rabi matrix: (1/2) sz + n - gbar sx (a + a')
    Matrix rabi(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        rabi(k, k) = 0.5 + k;
        rabi(n + k, n + k) = -0.5 + k;
    }
    for (int k = 0; k + 1 < n; ++k) {
        const double el = -gbar * std::sqrt(k + 1.0);
        rabi(k, n + k + 1) = el;
        rabi(n + k + 1, k) = el;
        rabi(k + 1, n + k) = el;
        rabi(n + k, k + 1) = el;
    }
    const std::vector<double> reference = jacobi_eigenvalues(rabi);
    for (int k = 0; k < 9; ++k) CHECK(std::abs(ours.values[k] - reference[k]) < 1e-10);
}

TEST_CASE("uncoupled levels") {
    SUBCASE("resonant harmonic degeneracy") {
        const CoupledModel m = model(OscKind::Tpt, 0.0, 1.0, 0.0, 0.0, ModelVariant::extended(1), 10);
        const std::vector<double> lv = uncoupled_levels(m, 4);
        CHECK(lv[0] == doctest::Approx(-0.5));
        CHECK(lv[1] == doctest::Approx(0.5));
        CHECK(lv[2] == doctest::Approx(0.5));
        CHECK(lv[3] == doctest::Approx(1.5));
    }
    SUBCASE("count = 1 gives the global ground") {
        const CoupledModel m = model(OscKind::Mpt, 0.025, 1.3, 0.4, 0.0, ModelVariant::extended(1), 12);
        CHECK(uncoupled_levels(m, 1)[0] ==
              doctest::Approx(-std::sqrt(1.0 + 0.16) / 2.0).epsilon(1e-14));
    }
    SUBCASE("n=1 -> 2 crossing shifts with the nonlinearity") {
        // (e,1) meets (g,2) where Delta_0 = Omega (1 + 3 lambda_inv / 2):
        // left of resonance for TPT, right of it for MPT.
        const double li = 0.025;
        for (OscKind kind : {OscKind::Tpt, OscKind::Mpt}) {
            const double sign = kind_sign(kind);
            const double omega_star = 1.0 / (1.0 + sign * 1.5 * li);
            const CoupledModel m = model(kind, li, omega_star, 0.0, 0.0, ModelVariant::extended(1), 12);
            const double e1 = 0.5 + omega_star * (1.0 + sign * li / 2.0);
            const double g2 = -0.5 + omega_star * (2.0 + sign * 2.0 * li);
            CHECK(e1 == doctest::Approx(g2).epsilon(1e-12));
            const std::vector<double> lv = uncoupled_levels(m, 6);
            int hits = 0;
            for (std::size_t k = 0; k + 1 < lv.size(); ++k)
                if (std::abs(lv[k] - lv[k + 1]) < 1e-12 && std::abs(lv[k] - e1) < 1e-12) ++hits;
            CHECK(hits == 1);
            if (kind == OscKind::Tpt)
                CHECK(omega_star < 1.0);
            else
                CHECK(omega_star > 1.0);
        }
    }
}

TEST_CASE("truncation convergence at the paper's operating points") {
    SUBCASE("TPT") {
        auto lowest9 = [](int n) {
            const CoupledModel m =
                model(OscKind::Tpt, 0.025, 1.0, 0.0, 0.2, ModelVariant::extended(3), n);
            return eigh(build_hamiltonian(m)).values;
        };
        const std::vector<double> a = lowest9(50), b = lowest9(60);
        for (int k = 0; k < 9; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8);
    }
    SUBCASE("MPT on the trusted lowest-lying window") {
        CHECK(default_fock_dim(OscKind::Mpt, 0.025) == 20);
        CHECK(default_fock_dim(OscKind::Tpt, 0.025) == 60);
        CHECK(default_fock_dim(OscKind::Mpt, 0.0) == 60);
        auto lowest9 = [](int n) {
            const CoupledModel m =
                model(OscKind::Mpt, 0.025, 1.0, 0.0, 0.2, ModelVariant::extended(3), n);
            return eigh(build_hamiltonian(m)).values;
        };
        const std::vector<double> a = lowest9(20), b = lowest9(30);
        for (int k = 0; k < 9; ++k) CHECK(std::abs(a[k] - b[k]) < 1e-8);
    }
}

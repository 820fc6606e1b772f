#pragma once

#include <vector>

#include "qno/hamiltonian.hpp"
#include "qno/matrix.hpp"

namespace qno {

// Second-order Van Vleck perturbation theory for the one-quantum model
// (variant Extended(1)). Energies in units of delta0, hbar = 1.

// Closed-form coefficients at level n:
//   delta_n = -gbar (delta0/Delta_Q) K1[n] f(n+1)
//   w1_n    = -K1[n-1]^2 f^2(n) eps^2    / (Delta_Q^2 Omega_{n-1})            gbar^2
//   w0_n    = -K1[n-1]^2 f^2(n) delta0^2 / (Delta_Q^2 (Delta_Q+Omega_{n-1}))  gbar^2
// w1/w0 are defined for n >= 1 and reported as 0 at n = 0 (every use in the
// block formulas multiplies them by n).
struct VvCoefficients {
    double delta_n = 0.0;
    double w1_n = 0.0;
    double w0_n = 0.0;
};

VvCoefficients vv_coefficients(const CoupledModel& model, int n);

// 2x2 quasi-degenerate block over {|e,n>, |g,n+1>}: trace eta, diagonal gap
// delta_small, mixing angle alpha (atan2 branch, alpha(gbar=0) = 0 for
// delta_small > 0 and pi for delta_small < 0), and the two eigenvalues.
struct VvBlock {
    int n = 0;
    double eta = 0.0;
    double delta_small = 0.0;
    double alpha = 0.0;
    double e_lower = 0.0; // E_{2n+1}
    double e_upper = 0.0; // E_{2n+2}
};

VvBlock vv_block(const CoupledModel& model, int n);

// Ground level: -Delta_Q/2 + w1_1 + w0_1.
double vv_ground_energy(const CoupledModel& model);

// Lowest `count` Van Vleck levels (ground + doublet blocks), ascending.
std::vector<double> vv_levels(const CoupledModel& model, int count);

// Splitting estimate at resonance tuning: 2 K1[n] f(n+1) sqrt(n+1) gbar.
double splitting_estimate(const CoupledModel& model, int n);

// Solves the resonance-tuning condition of the unbiased qubit,
// Delta_Q - Omega_n = (n+2) w0_{n+2} + n w0_n, for the oscillator frequency
// (the Bloch-Siegert-type shift of the bare crossing).
double resonance_omega(const CoupledModel& model, int n);

// Second-order generator matrices in the fixed composite basis, each 2N x 2N
// real: iS1 and iS2 antisymmetric, the closed-form product matrix iS1*iS1
// symmetric (it carries no flavor-diagonal band, so it is not the literal
// square of the truncated iS1). One triangle of each band is written out;
// the other follows by (anti)symmetry.
struct SMatrices {
    Matrix is1;
    Matrix is2;
    Matrix is1_is1;
};

SMatrices s_matrices(const CoupledModel& model, int fock_dim);

// Effective eigenvector mapped back to the full space by
// 1 - iS1 - iS2 + (1/2) iS1*iS1, then renormalized. norm_deviation records
// |pre-normalization norm - 1|.
struct VvState {
    std::vector<double> amplitudes;
    double norm_deviation = 0.0;
};

VvState vv_ground_state(const CoupledModel& model, int fock_dim);
VvState vv_doublet_state(const CoupledModel& model, int n, bool upper, int fock_dim);

} // namespace qno

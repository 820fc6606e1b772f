#pragma once

#include <vector>

#include "qno/matrix.hpp"
#include "qno/oscillator.hpp"

namespace qno {

// Exact Poschl-Teller eigenfunctions, evaluated by a three-term recurrence in
// the polynomial degree and normalized numerically (no Gamma-function
// constants). Serves as the independent oracle for the operator expansions and
// as the position basis of the Wigner transform.
//
// TPT:  psi_n(x) ~ cos^lambda(ax) * C_n^{(lambda)}(sin ax)      on (-pi/2a, pi/2a)
// MPT:  psi_n(x) ~ sech^{lambda-n}(ax) * C_n^{(lambda-n+1/2)}(tanh ax)
//
// Conventions: hbar = mu = 1, a = sqrt(omega * lambda_inv); x is physical,
// the dimensionless coordinate is x_tilde = sqrt(omega) * x. Phases are fixed
// by parity (even n even, odd n odd) with the outermost right lobe positive.
class PtBasis {
public:
    // lambda_inv must be > 0 (the harmonic limit is approached, not reached);
    // for MPT lambda = 1/lambda_inv must be an integer and n_levels <= lambda.
    PtBasis(OscKind kind, double lambda_inv, double omega, int n_levels);

    OscKind kind() const { return kind_; }
    double lambda() const { return lambda_; }
    double omega() const { return omega_; }
    double range_parameter() const { return a_; }
    int n_levels() const { return n_levels_; }

    // TPT domain half-width pi/(2a); infinity for MPT.
    double domain_half_width() const;

    // U0 tan^2(ax) or U0 tanh^2(ax); throws DomainError outside the TPT domain.
    double eval_potential(double x) const;
    double potential_strength() const { return u0_; }

    // n-th normalized eigenfunction at physical x (0 outside the TPT domain).
    double eval_wavefunction(int n, double x) const;

    // All levels at once; out must hold n_levels values.
    void eval_all(double x, double* out) const;

    // Same in dimensionless units: psi~_n(x~) = omega^{-1/4} psi_n(x~/sqrt(omega)).
    double eval_wavefunction_scaled(int n, double x_tilde) const;
    void eval_all_scaled(double x_tilde, double* out) const;

    // <psi_m| x_tilde |psi_n> by adaptive Gauss-Legendre quadrature.
    double exact_matrix_element_x(int m, int n) const;

    // k x k Gram matrix <psi_m|psi_n>.
    Matrix orthonormality_matrix(int k) const;

    // Physical |x| beyond which every stored level is negligible (< ~1e-12 of
    // its peak); used to bound integration windows.
    double support_radius() const { return support_radius_; }

    // Same bound restricted to levels 0..max_level.
    double support_radius(int max_level) const;

private:
    double raw_value(int n, double x) const;
    void raw_all(double x, double* out) const;
    double level_support(int n) const;

    OscKind kind_;
    double lambda_;
    double omega_;
    double a_;
    double u0_;
    int n_levels_;
    std::vector<double> norm_; // 1/sqrt(integral of raw^2)
    double support_radius_ = 0.0;
};

} // namespace qno

#pragma once

#include <vector>

#include "qno/matrix.hpp"
#include "qno/oscillator.hpp"

namespace qno {

// Two-state system with gap delta0 (the energy unit) and bias epsilon.
// In the energy eigenbasis the splitting is Delta_Q = sqrt(eps^2 + delta0^2)
// and the coupling splits into sigma_z/sigma_x parts with weights eps/Delta_Q
// and delta0/Delta_Q.
class QubitSpec {
public:
    explicit QubitSpec(double delta0 = 1.0, double epsilon = 0.0);

    double delta0() const { return delta0_; }
    double epsilon() const { return epsilon_; }
    double splitting() const;      // Delta_Q
    double sigma_z_weight() const; // eps / Delta_Q
    double sigma_x_weight() const; // delta0 / Delta_Q

private:
    double delta0_;
    double epsilon_;
};

// Qubit x oscillator model in the qubit energy eigenbasis. Composite basis
// order is fixed: |e,n> maps to index n, |g,n> to index N+n (e-block first).
struct CoupledModel {
    QubitSpec qubit;
    OscillatorSpec osc;
    double gbar = 0.0;
    ModelVariant variant = ModelVariant::extended(1);
};

// H = (Delta_Q/2) sz x I + I x H_osc - gbar [ (eps/Delta_Q) sz + (delta0/Delta_Q) sx ] x X
// with X the weighted ladder series of the chosen variant (sqrt(2) times the
// dimensionless position operator). Real symmetric, 2N x 2N.
OperatorMatrix build_hamiltonian(const CoupledModel& model);

// Ascending energies of the uncoupled system (+-Delta_Q/2 + oscillator ladder).
std::vector<double> uncoupled_levels(const CoupledModel& model, int count);

} // namespace qno

#include "qno/hamiltonian.hpp"

#include <algorithm>
#include <cmath>

#include "qno/errors.hpp"

namespace qno {

QubitSpec::QubitSpec(double delta0, double epsilon) : delta0_(delta0), epsilon_(epsilon) {
    if (!(delta0 > 0.0)) throw DomainError("QubitSpec: delta0 must be > 0");
}

double QubitSpec::splitting() const { return std::hypot(epsilon_, delta0_); }
double QubitSpec::sigma_z_weight() const { return epsilon_ / splitting(); }
double QubitSpec::sigma_x_weight() const { return delta0_ / splitting(); }

OperatorMatrix build_hamiltonian(const CoupledModel& model) {
    const int n = model.osc.fock_dim();
    const double dq = model.qubit.splitting();
    const double wz = model.qubit.sigma_z_weight();
    const double wx = model.qubit.sigma_x_weight();

    const OperatorMatrix h_osc = number_hamiltonian(model.osc);
    // sqrt(2) * x_tilde: the K-weighted ladder series without the unit prefactor,
    // shared with position_operator so both stay in lockstep.
    const Matrix x_int = std::sqrt(2.0) * position_operator(model.osc, model.variant).data();

    Matrix h(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double osc_ij = h_osc.data()(i, j);
            const double g_ij = model.gbar * x_int(i, j);
            h(i, j) = osc_ij - wz * g_ij;          // e-block
            h(n + i, n + j) = osc_ij + wz * g_ij;  // g-block
            h(i, n + j) = -wx * g_ij;
            h(n + j, i) = -wx * g_ij;
        }
        h(i, i) += dq / 2.0;
        h(n + i, n + i) -= dq / 2.0;
    }
    return OperatorMatrix(std::move(h), Symmetry::Symmetric);
}

std::vector<double> uncoupled_levels(const CoupledModel& model, int count) {
    const int n = model.osc.fock_dim();
    if (count < 1 || count > 2 * n) throw DomainError("uncoupled_levels: count out of range");
    const double dq = model.qubit.splitting();
    std::vector<double> levels;
    levels.reserve(2 * n);
    for (int k = 0; k < n; ++k) {
        const double osc = model.osc.omega() *
                           (k + model.osc.sign() * k * k * model.osc.lambda_inv() / 2.0);
        levels.push_back(osc + dq / 2.0);
        levels.push_back(osc - dq / 2.0);
    }
    std::sort(levels.begin(), levels.end());
    levels.resize(count);
    return levels;
}

} // namespace qno

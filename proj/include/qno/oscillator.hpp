#pragma once

#include <optional>
#include <vector>

#include "qno/matrix.hpp"

namespace qno {

// TPT = trigonometric Poschl-Teller well (hard nonlinearity, level spacing grows),
// MPT = modified/hyperbolic well (soft nonlinearity, level spacing shrinks).
enum class OscKind { Tpt, Mpt };

// Returns +1 for TPT, -1 for MPT.
inline double kind_sign(OscKind k) { return k == OscKind::Tpt ? 1.0 : -1.0; }

// f-deformed oscillator description. Everything is parametrized by
// lambda_inv = 1/lambda so that lambda_inv = 0 is exactly the harmonic
// oscillator (no division by an infinite lambda anywhere).
//
// Conventions: hbar = mu = 1, a^2*lambda = Omega, energies in units of the
// qubit gap Delta0.
class OscillatorSpec {
public:
    // Throws DomainError on invalid parameters; throws GuardError for MPT when
    // (fock_dim + 5) * lambda_inv >= 1, the condition ensuring every diagonal
    // weight chain (which reaches F at index n+4) stays real and finite.
    OscillatorSpec(OscKind kind, double lambda_inv, double omega, int fock_dim);

    OscKind kind() const { return kind_; }
    double lambda_inv() const { return lambda_inv_; }
    double omega() const { return omega_; }
    int fock_dim() const { return fock_dim_; }
    double sign() const { return kind_sign(kind_); }

    // Range parameter a = sqrt(omega * lambda_inv); 0 in the harmonic limit.
    double range_parameter() const;

    // Index of the last MPT bound state, n_max = lambda - 1. Empty for TPT
    // (infinitely many bound states) and for the harmonic limit.
    std::optional<int> last_bound_level() const;

private:
    OscKind kind_;
    double lambda_inv_;
    double omega_;
    int fock_dim_;
};

// Largest MPT fock dimension allowed by the real-algebra guard for a given
// lambda_inv (TPT and the harmonic limit are unrestricted).
int max_guarded_fock_dim(OscKind kind, double lambda_inv, int requested);

// Default truncation for eigenproblems. TPT: 60. MPT: the lowest-lying half of
// the bound spectrum, min(60, lambda/2): past n ~ lambda/2 the operator
// expansions leave their convergence domain (K1 changes sign near 0.65*lambda)
// and the divergent tail seeds spurious deep eigenstates.
int default_fock_dim(OscKind kind, double lambda_inv);

// Deformation function squared: f^2(n) = 1 +/- (n-1)*lambda_inv/2.
double f_squared(const OscillatorSpec& spec, int n);

// Frequency separation between levels n and n+1: Omega*(1 +/- (2n+1)*lambda_inv/2).
double level_spacing(const OscillatorSpec& spec, int n);

struct LadderPair {
    OperatorMatrix lowering; // A[n-1, n] = sqrt(n * f^2(n))
    OperatorMatrix raising;  // A^T
};

LadderPair ladder_matrices(const OscillatorSpec& spec);

// Diagonal oscillator Hamiltonian Omega*(n +/- n^2*lambda_inv/2); the constant
// Omega/2 is dropped.
OperatorMatrix number_hamiltonian(const OscillatorSpec& spec);

// Per-level weights of the operator expansions
//   x = (A'K1 + A'^3 K2 + A'^5 K3 + h.c.) / sqrt(2)   (dimensionless units)
//   p = i(A'J1 + A'^3 J2 + A'^5 J3 - h.c.) / sqrt(2)
// where A' is the deformed raising operator and each table is evaluated at the
// level index n = 0..fock_dim-1. K1/J1 carry the first-order lambda_inv
// correction; K2/J2 mix first and second order; K3/J3 are purely second order.
struct WeightTables {
    std::vector<double> k1, k2, k3;
    std::vector<double> j1, j2, j3;
};

WeightTables diagonal_weights(const OscillatorSpec& spec);

// Which operator expansion to use. Vibron keeps the bare ladder operators;
// Extended(k) keeps weighted powers of the ladder operators up to A^k,
// k in {1, 3, 5}.
class ModelVariant {
public:
    static ModelVariant vibron() { return ModelVariant(true, 1); }
    static ModelVariant extended(int max_power);

    bool is_vibron() const { return vibron_; }
    int max_power() const { return max_power_; }
    bool operator==(const ModelVariant&) const = default;

private:
    ModelVariant(bool v, int p) : vibron_(v), max_power_(p) {}
    bool vibron_;
    int max_power_;
};

// Dimensionless position operator (x = sqrt(hbar/mu Omega) * x_tilde).
OperatorMatrix position_operator(const OscillatorSpec& spec, const ModelVariant& variant);

// Antisymmetric matrix M with dimensionless momentum p_tilde = i*M.
OperatorMatrix momentum_operator(const OscillatorSpec& spec, const ModelVariant& variant);

} // namespace qno

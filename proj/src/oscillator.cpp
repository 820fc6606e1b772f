#include "qno/oscillator.hpp"

#include <cmath>
#include <string>

#include "qno/errors.hpp"

namespace qno {

OscillatorSpec::OscillatorSpec(OscKind kind, double lambda_inv, double omega, int fock_dim)
    : kind_(kind), lambda_inv_(lambda_inv), omega_(omega), fock_dim_(fock_dim) {
    if (!(lambda_inv >= 0.0)) throw DomainError("OscillatorSpec: lambda_inv must be >= 0");
    if (!(omega > 0.0)) throw DomainError("OscillatorSpec: omega must be > 0");
    if (fock_dim < 2) throw DomainError("OscillatorSpec: fock_dim must be >= 2");
    if (kind == OscKind::Mpt && lambda_inv > 0.0 &&
        (fock_dim + 5) * lambda_inv >= 1.0)
        throw GuardError("MPT truncation exceeds real-algebra range: need (fock_dim+5)*lambda_inv < 1, got " +
                         std::to_string((fock_dim + 5) * lambda_inv));
}

double OscillatorSpec::range_parameter() const { return std::sqrt(omega_ * lambda_inv_); }

std::optional<int> OscillatorSpec::last_bound_level() const {
    if (kind_ != OscKind::Mpt || lambda_inv_ == 0.0) return std::nullopt;
    return static_cast<int>(std::lround(1.0 / lambda_inv_)) - 1;
}

int max_guarded_fock_dim(OscKind kind, double lambda_inv, int requested) {
    if (kind != OscKind::Mpt || lambda_inv <= 0.0) return requested;
    // largest N with (N+5)*lambda_inv < 1
    int n = static_cast<int>(std::ceil(1.0 / lambda_inv)) - 5;
    while ((n + 5) * lambda_inv >= 1.0) --n;
    return std::min(requested, n);
}

int default_fock_dim(OscKind kind, double lambda_inv) {
    if (kind != OscKind::Mpt || lambda_inv <= 0.0) return 60;
    const int half = static_cast<int>(std::floor(0.5 / lambda_inv));
    return max_guarded_fock_dim(kind, lambda_inv, std::max(2, std::min(60, half)));
}

double f_squared(const OscillatorSpec& spec, int n) {
    return 1.0 + spec.sign() * (n - 1) * spec.lambda_inv() / 2.0;
}

double level_spacing(const OscillatorSpec& spec, int n) {
    return spec.omega() * (1.0 + spec.sign() * (2 * n + 1) * spec.lambda_inv() / 2.0);
}

LadderPair ladder_matrices(const OscillatorSpec& spec) {
    const int n = spec.fock_dim();
    Matrix a(n, n);
    for (int k = 1; k < n; ++k) {
        const double f2 = f_squared(spec, k);
        if (f2 <= 0.0)
            throw GuardError("MPT truncation exceeds real-algebra range: f^2(" +
                             std::to_string(k) + ") <= 0");
        a(k - 1, k) = std::sqrt(k * f2);
    }
    Matrix adag = a.transposed();
    return LadderPair{OperatorMatrix(std::move(a), Symmetry::General),
                      OperatorMatrix(std::move(adag), Symmetry::General)};
}

OperatorMatrix number_hamiltonian(const OscillatorSpec& spec) {
    const int n = spec.fock_dim();
    Matrix h(n, n);
    for (int k = 0; k < n; ++k)
        h(k, k) = spec.omega() * (k + spec.sign() * k * k * spec.lambda_inv() / 2.0);
    return OperatorMatrix(std::move(h), Symmetry::Symmetric);
}

namespace {

// Number-dependent factors of the operator expansions, written in lambda_inv.
// Every square-root argument must stay positive; for MPT this is what the
// (fock_dim+5) guard protects.
class WeightFactors {
public:
    WeightFactors(double sign, double li) : s_(sign), li_(li) {}

    double F(int n) const { return 1.0 / std::sqrt(term(n) * term(n + 1)); }
    double G(int n) const { return 1.0 / std::sqrt(term(n) * term(n - 1)); }
    double H(int n) const { return std::sqrt(term(n) / (term(n) - s_ * li_)); }
    double Q(int n) const { return std::sqrt(term(n) / (term(n) + s_ * li_)); }
    double f2(int n) const { return 1.0 + s_ * (n - 1) * li_ / 2.0; }

    double S(int n) const { return (Q(n) + H(n + 1)) / 2.0; }

    double F1(int n) const { return F(n) * F(n + 1) * F(n + 2); }
    double F2(int n) const { return G(n) * F(n - 1) * F(n); }
    double F3(int n) const { return F(n) * F(n) * G(n + 1); }
    double F4(int n) const { return F(n) * F(n + 1) * G(n + 2); }

    double H1(int n) const { return (F(n + 2) * F(n + 1) * Q(n) + G(n + 1) * G(n + 2) * H(n + 3)) / 2.0; }
    double H2(int n) const { return (-F(n) * F(n - 1) * H(n) + F(n - 1) * G(n) * H(n + 1)) / 2.0; }
    double H3(int n) const { return (F(n) * G(n + 1) * Q(n) + G(n + 1) * F(n) * H(n + 1)) / 2.0; }
    double H4(int n) const { return (G(n + 2) * F(n + 1) * Q(n) - G(n + 1) * G(n + 2) * Q(n + 1)) / 2.0; }

    double F1p(int n) const { return F(n + 4) * F(n + 3) * F1(n); }
    double F2p(int n) const { return F(n + 2) * F(n + 1) * F2(n); }
    double F3p(int n) const { return F(n + 2) * F(n + 1) * F3(n); }
    double F4p(int n) const { return F(n + 2) * F(n + 1) * F4(n); }
    double F5p(int n) const { return F(n + 2) * G(n + 3) * F1(n); }
    double F6p(int n) const { return G(n + 4) * F(n + 3) * F1(n); }

    double H1p(int n) const { return (F(n + 3) * F1(n) * H(n + 5) + F(n + 4) * F1(n + 1) * Q(n)) / 2.0; }
    double H2p(int n) const { return (F(n + 1) * F2(n) * H(n + 4) - F(n + 2) * F1(n - 1) * H(n)) / 2.0; }
    double H3p(int n) const { return (F(n + 1) * F3(n) * H(n + 3) + F(n + 2) * F2(n + 1) * Q(n)) / 2.0; }
    double H4p(int n) const { return (F(n + 1) * F4(n) * H(n + 3) + F(n + 2) * F3(n + 1) * Q(n)) / 2.0; }
    double H5p(int n) const { return (G(n + 3) * F1(n) * H(n + 3) + F(n + 2) * F4(n + 1) * Q(n)) / 2.0; }
    double H6p(int n) const { return (-F(n + 3) * F1(n) * Q(n + 3) + G(n + 4) * F1(n + 1) * Q(n)) / 2.0; }

private:
    double term(int n) const {
        const double t = 1.0 + s_ * n * li_;
        if (t <= 0.0)
            throw GuardError("MPT truncation exceeds real-algebra range: 1 - " +
                             std::to_string(n) + "*lambda_inv <= 0");
        return t;
    }

    double s_;
    double li_;
};

} // namespace

WeightTables diagonal_weights(const OscillatorSpec& spec) {
    const int dim = spec.fock_dim();
    WeightTables w;
    w.k1.assign(dim, 1.0);
    w.k2.assign(dim, 0.0);
    w.k3.assign(dim, 0.0);
    w.j1.assign(dim, 1.0);
    w.j2.assign(dim, 0.0);
    w.j3.assign(dim, 0.0);
    const double li = spec.lambda_inv();
    if (li == 0.0) return w;

    const double s = spec.sign();
    const WeightFactors ff(s, li);
    const double c1x = li / 12.0;       // first-order prefactor of the x-expansion
    const double c2x = 3.0 * li * li / 160.0;
    const double c1p = li / 4.0;        // first-order prefactor of the p-expansion
    const double c2p = 3.0 * li * li / 32.0;

    for (int n = 0; n < dim; ++n) {
        // The n*f^2(n)*... terms vanish at n = 0; skipping them avoids touching
        // factors at negative index.
        double bx1 = (n + 1) * ff.f2(n + 1) * ff.F3(n) + (n + 2) * ff.f2(n + 2) * ff.F4(n);
        if (n > 0) bx1 += n * ff.f2(n) * ff.F2(n);
        w.k1[n] = ff.F(n) + s * c1x * bx1;

        double bx2 = (n + 1) * ff.f2(n + 1) * ff.F3p(n) + (n + 2) * ff.f2(n + 2) * ff.F4p(n) +
                     (n + 3) * ff.f2(n + 3) * ff.F5p(n) + (n + 4) * ff.f2(n + 4) * ff.F6p(n);
        if (n > 0) bx2 += n * ff.f2(n) * ff.F2p(n);
        w.k2[n] = s * c1x * ff.F1(n) + c2x * bx2;

        w.k3[n] = c2x * ff.F1p(n);

        double bp1 = (n + 1) * ff.f2(n + 1) * ff.H3(n) + (n + 2) * ff.f2(n + 2) * ff.H4(n);
        if (n > 0) bp1 += n * ff.f2(n) * ff.H2(n);
        w.j1[n] = ff.S(n) + s * c1p * bp1;

        double bp2 = (n + 1) * ff.f2(n + 1) * ff.H3p(n) + (n + 2) * ff.f2(n + 2) * ff.H4p(n) +
                     (n + 3) * ff.f2(n + 3) * ff.H5p(n) + (n + 4) * ff.f2(n + 4) * ff.H6p(n);
        if (n > 0) bp2 += n * ff.f2(n) * ff.H2p(n);
        w.j2[n] = s * c1p * ff.H1(n) + c2p * bp2;

        w.j3[n] = c2p * ff.H1p(n);
    }
    return w;
}

ModelVariant ModelVariant::extended(int max_power) {
    if (max_power != 1 && max_power != 3 && max_power != 5)
        throw DomainError("ModelVariant: extended max_power must be 1, 3 or 5");
    return ModelVariant(false, max_power);
}

namespace {

// (raising^k * diag(w) + diag(w) * lowering^k), the h.c. pair of one expansion term.
Matrix expansion_term(const Matrix& raising_pow, const std::vector<double>& weight) {
    const Matrix d = Matrix::diagonal(weight);
    const Matrix up = raising_pow * d;
    return up + up.transposed();
}

// (raising^k * diag(w) - diag(w) * lowering^k), the anti-Hermitian pair.
Matrix expansion_term_anti(const Matrix& raising_pow, const std::vector<double>& weight) {
    const Matrix d = Matrix::diagonal(weight);
    const Matrix up = raising_pow * d;
    return up - up.transposed();
}

} // namespace

OperatorMatrix position_operator(const OscillatorSpec& spec, const ModelVariant& variant) {
    const LadderPair ladder = ladder_matrices(spec);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (variant.is_vibron()) {
        Matrix x = inv_sqrt2 * (ladder.raising.data() + ladder.lowering.data());
        return OperatorMatrix(std::move(x), Symmetry::Symmetric);
    }
    const WeightTables w = diagonal_weights(spec);
    Matrix acc = expansion_term(ladder.raising.data(), w.k1);
    if (variant.max_power() >= 3) {
        const Matrix ad3 = ladder.raising.data() * ladder.raising.data() * ladder.raising.data();
        acc = acc + expansion_term(ad3, w.k2);
        if (variant.max_power() >= 5) {
            const Matrix ad5 = ad3 * ladder.raising.data() * ladder.raising.data();
            acc = acc + expansion_term(ad5, w.k3);
        }
    }
    return OperatorMatrix(inv_sqrt2 * acc, Symmetry::Symmetric);
}

OperatorMatrix momentum_operator(const OscillatorSpec& spec, const ModelVariant& variant) {
    const LadderPair ladder = ladder_matrices(spec);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (variant.is_vibron()) {
        Matrix m = inv_sqrt2 * (ladder.raising.data() - ladder.lowering.data());
        return OperatorMatrix(std::move(m), Symmetry::Antisymmetric);
    }
    const WeightTables w = diagonal_weights(spec);
    Matrix acc = expansion_term_anti(ladder.raising.data(), w.j1);
    if (variant.max_power() >= 3) {
        const Matrix ad3 = ladder.raising.data() * ladder.raising.data() * ladder.raising.data();
        acc = acc + expansion_term_anti(ad3, w.j2);
        if (variant.max_power() >= 5) {
            const Matrix ad5 = ad3 * ladder.raising.data() * ladder.raising.data();
            acc = acc + expansion_term_anti(ad5, w.j3);
        }
    }
    return OperatorMatrix(inv_sqrt2 * acc, Symmetry::Antisymmetric);
}

} // namespace qno

#include "qno/pt_exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qno/errors.hpp"
#include "qno/quadrature.hpp"

namespace qno {

namespace {

// Gegenbauer C_n^{(alpha)}(u) by the degree recurrence, scaled by `prefactor`.
double gegenbauer_scaled(int n, double alpha, double u, double prefactor) {
    if (prefactor == 0.0) return 0.0;
    double c0 = prefactor;
    if (n == 0) return c0;
    double c1 = 2.0 * alpha * u * prefactor;
    for (int k = 2; k <= n; ++k) {
        const double c2 = (2.0 * u * (k + alpha - 1.0) * c1 - (k + 2.0 * alpha - 2.0) * c0) / k;
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double integrate_relative(const std::function<double(double)>& f, double lo, double hi) {
    // Pilot estimate fixes the scale, then refine to ~1e-11 relative.
    std::vector<double> xs, ws;
    panel_nodes(lo, hi, 8, xs, ws);
    double pilot = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) pilot += ws[i] * f(xs[i]);
    const double tol = std::max(1e-11 * std::abs(pilot), 1e-300);
    return integrate_adaptive(f, lo, hi, tol);
}

} // namespace

PtBasis::PtBasis(OscKind kind, double lambda_inv, double omega, int n_levels)
    : kind_(kind), omega_(omega), n_levels_(n_levels) {
    if (!(lambda_inv > 0.0)) throw DomainError("PtBasis: lambda_inv must be > 0");
    if (!(omega > 0.0)) throw DomainError("PtBasis: omega must be > 0");
    if (n_levels < 1) throw DomainError("PtBasis: n_levels must be >= 1");
    lambda_ = 1.0 / lambda_inv;
    a_ = std::sqrt(omega * lambda_inv);
    if (kind == OscKind::Mpt) {
        const double rounded = std::round(lambda_);
        if (std::abs(lambda_ - rounded) > 1e-9 * lambda_)
            throw DomainError("PtBasis: MPT lambda must be an integer, got " +
                              std::to_string(lambda_));
        lambda_ = rounded;
        if (n_levels > static_cast<int>(rounded))
            throw DomainError("PtBasis: MPT supports bound levels 0.." +
                              std::to_string(static_cast<int>(rounded) - 1) + " only");
        u0_ = a_ * a_ * lambda_ * (lambda_ + 1.0) / 2.0;
    } else {
        // psi_n ~ cos^lambda(ax) C_n^lambda(sin ax) solves U0 tan^2(ax) exactly
        // when U0 = a^2 lambda(lambda-1)/2, with E_n = Omega (n + 1/2 + n^2/(2 lambda)).
        u0_ = a_ * a_ * lambda_ * (lambda_ - 1.0) / 2.0;
    }

    norm_.assign(n_levels_, 1.0);
    for (int n = 0; n < n_levels_; ++n) {
        double integral;
        if (kind_ == OscKind::Tpt) {
            const double x_hi = level_support(n);
            integral = integrate_relative([this, n](double x) {
                const double v = raw_value(n, x);
                return v * v;
            }, -x_hi, x_hi);
        } else {
            // u = tanh(ax):  integral psi^2 dx = (1/a) int (1-u^2)^{lambda-n-1} C^2 du
            const double alpha = lambda_ - n + 0.5;
            const double expo = lambda_ - n - 1.0;
            integral = integrate_relative([this, n, alpha, expo](double u) {
                const double c = gegenbauer_scaled(n, alpha, u, 1.0);
                return std::pow(1.0 - u * u, expo) * c * c;
            }, -1.0, 1.0) / a_;
        }
        if (!(integral > 0.0)) throw NumericError("PtBasis: normalization integral not positive", integral);
        norm_[n] = 1.0 / std::sqrt(integral);
    }

    support_radius_ = 0.0;
    for (int n = 0; n < n_levels_; ++n) support_radius_ = std::max(support_radius_, level_support(n));
}

double PtBasis::support_radius(int max_level) const {
    if (max_level < 0 || max_level >= n_levels_)
        throw DomainError("PtBasis: level index out of range");
    double r = 0.0;
    for (int n = 0; n <= max_level; ++n) r = std::max(r, level_support(n));
    return r;
}

double PtBasis::domain_half_width() const {
    if (kind_ == OscKind::Tpt) return M_PI / (2.0 * a_);
    return std::numeric_limits<double>::infinity();
}

double PtBasis::eval_potential(double x) const {
    if (kind_ == OscKind::Tpt) {
        if (std::abs(x) >= domain_half_width())
            throw DomainError("PtBasis: x outside the TPT domain (-pi/2a, pi/2a)");
        const double t = std::tan(a_ * x);
        return u0_ * t * t;
    }
    const double t = std::tanh(a_ * x);
    return u0_ * t * t;
}

// Classical turning point plus a decay margin; clipped to the TPT domain.
double PtBasis::level_support(int n) const {
    const double sign = kind_sign(kind_);
    const double energy = omega_ * (n + 0.5 + sign * n * n / (2.0 * lambda_));
    if (kind_ == OscKind::Tpt) {
        const double edge = domain_half_width();
        const double turn = std::atan(std::sqrt(std::max(energy, 0.0) / u0_)) / a_;
        return std::min(edge * (1.0 - 1e-12), turn + 16.0 / std::sqrt(omega_));
    }
    const double ratio = std::min(std::max(energy, 0.0) / u0_, 0.999999);
    const double turn = std::atanh(std::sqrt(ratio)) / a_;
    const double decay = (lambda_ - n) * a_; // sech^{lambda-n} tail rate
    return turn + 32.0 / decay;
}

double PtBasis::raw_value(int n, double x) const {
    if (kind_ == OscKind::Tpt) {
        const double edge = domain_half_width();
        if (std::abs(x) >= edge) return 0.0;
        const double c = std::cos(a_ * x);
        const double pre = std::exp(lambda_ * std::log(c));
        return gegenbauer_scaled(n, lambda_, std::sin(a_ * x), pre);
    }
    const double u = std::tanh(a_ * x);
    const double log_sech = -std::log(std::cosh(a_ * x));
    const double pre = std::exp((lambda_ - n) * log_sech);
    return gegenbauer_scaled(n, lambda_ - n + 0.5, u, pre);
}

void PtBasis::raw_all(double x, double* out) const {
    if (kind_ == OscKind::Tpt) {
        const double edge = domain_half_width();
        if (std::abs(x) >= edge) {
            for (int n = 0; n < n_levels_; ++n) out[n] = 0.0;
            return;
        }
        const double u = std::sin(a_ * x);
        const double pre = std::exp(lambda_ * std::log(std::cos(a_ * x)));
        double c0 = pre;
        out[0] = c0;
        if (n_levels_ == 1) return;
        double c1 = 2.0 * lambda_ * u * pre;
        out[1] = c1;
        for (int k = 2; k < n_levels_; ++k) {
            const double c2 = (2.0 * u * (k + lambda_ - 1.0) * c1 - (k + 2.0 * lambda_ - 2.0) * c0) / k;
            c0 = c1;
            c1 = c2;
            out[k] = c2;
        }
        return;
    }
    for (int n = 0; n < n_levels_; ++n) out[n] = raw_value(n, x);
}

double PtBasis::eval_wavefunction(int n, double x) const {
    if (n < 0 || n >= n_levels_) throw DomainError("PtBasis: level index out of range");
    return norm_[n] * raw_value(n, x);
}

void PtBasis::eval_all(double x, double* out) const {
    raw_all(x, out);
    for (int n = 0; n < n_levels_; ++n) out[n] *= norm_[n];
}

double PtBasis::eval_wavefunction_scaled(int n, double x_tilde) const {
    const double scale = std::sqrt(omega_);
    return eval_wavefunction(n, x_tilde / scale) / std::sqrt(scale);
}

void PtBasis::eval_all_scaled(double x_tilde, double* out) const {
    const double scale = std::sqrt(omega_);
    eval_all(x_tilde / scale, out);
    const double f = 1.0 / std::sqrt(scale);
    for (int n = 0; n < n_levels_; ++n) out[n] *= f;
}

double PtBasis::exact_matrix_element_x(int m, int n) const {
    if (m < 0 || m >= n_levels_ || n < 0 || n >= n_levels_)
        throw DomainError("PtBasis: level index out of range");
    const double sqrt_omega = std::sqrt(omega_);
    if (kind_ == OscKind::Tpt) {
        const double x_hi = std::max(level_support(m), level_support(n));
        return sqrt_omega * integrate_adaptive([this, m, n](double x) {
            return eval_wavefunction(m, x) * x * eval_wavefunction(n, x);
        }, -x_hi, x_hi, 1e-10);
    }
    // u = tanh(ax), x = atanh(u)/a; norms folded in so the tolerance acts on
    // the O(1) physical value
    const double alpha_m = lambda_ - m + 0.5;
    const double alpha_n = lambda_ - n + 0.5;
    const double expo = lambda_ - 0.5 * (m + n) - 1.0;
    const double pre = norm_[m] * norm_[n] / (a_ * a_);
    return sqrt_omega * integrate_adaptive([=, this](double u) {
        const double cm = gegenbauer_scaled(m, alpha_m, u, 1.0);
        const double cn = gegenbauer_scaled(n, alpha_n, u, 1.0);
        return pre * std::pow(1.0 - u * u, expo) * cm * cn * std::atanh(u);
    }, -1.0, 1.0, 1e-10);
}

Matrix PtBasis::orthonormality_matrix(int k) const {
    if (k < 1 || k > n_levels_) throw DomainError("PtBasis: Gram size out of range");
    Matrix gram(k, k);
    for (int m = 0; m < k; ++m) {
        for (int n = m; n < k; ++n) {
            double val;
            if (kind_ == OscKind::Tpt) {
                const double x_hi = std::max(level_support(m), level_support(n));
                val = integrate_adaptive([this, m, n](double x) {
                    return eval_wavefunction(m, x) * eval_wavefunction(n, x);
                }, -x_hi, x_hi, 1e-10);
            } else {
                const double alpha_m = lambda_ - m + 0.5;
                const double alpha_n = lambda_ - n + 0.5;
                const double expo = lambda_ - 0.5 * (m + n) - 1.0;
                const double pre = norm_[m] * norm_[n] / a_;
                val = integrate_adaptive([=](double u) {
                    const double cm = gegenbauer_scaled(m, alpha_m, u, 1.0);
                    const double cn = gegenbauer_scaled(n, alpha_n, u, 1.0);
                    return pre * std::pow(1.0 - u * u, expo) * cm * cn;
                }, -1.0, 1.0, 1e-10);
            }
            gram(m, n) = val;
            gram(n, m) = val;
        }
    }
    return gram;
}

} // namespace qno

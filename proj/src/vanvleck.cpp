#include "qno/vanvleck.hpp"

#include <algorithm>
#include <cmath>

#include "qno/errors.hpp"

namespace qno {

namespace {

void require_one_quantum(const CoupledModel& model) {
    if (model.variant.is_vibron() || model.variant.max_power() != 1)
        throw DomainError("vanvleck: the perturbative treatment covers the one-quantum model "
                          "(variant Extended(1)) only");
}

// Shared per-model context: K1 table, deformation values, transition frequencies.
class VvContext {
public:
    explicit VvContext(const CoupledModel& model)
        : spec_(model.osc),
          gbar_(model.gbar),
          dq_(model.qubit.splitting()),
          eps_(model.qubit.epsilon()),
          d0_(model.qubit.delta0()),
          k1_(diagonal_weights(model.osc).k1) {}

    double k1(int n) const { return k1_.at(n); }
    double f(int n) const { return std::sqrt(f_squared(spec_, n)); }
    double f2(int n) const { return f_squared(spec_, n); }
    // Omega_{m,n} = Omega (m-n) (1 +/- (m+n) lambda_inv / 2)
    double omega_mn(int m, int n) const {
        return spec_.omega() * (m - n) *
               (1.0 + spec_.sign() * (m + n) * spec_.lambda_inv() / 2.0);
    }
    double spacing(int n) const { return level_spacing(spec_, n); }

    double gbar() const { return gbar_; }
    double dq() const { return dq_; }
    double eps() const { return eps_; }
    double d0() const { return d0_; }
    const OscillatorSpec& spec() const { return spec_; }

private:
    OscillatorSpec spec_;
    double gbar_, dq_, eps_, d0_;
    std::vector<double> k1_;
};

VvCoefficients coefficients(const VvContext& c, int n) {
    VvCoefficients out;
    out.delta_n = -c.gbar() * (c.d0() / c.dq()) * c.k1(n) * c.f(n + 1);
    if (n >= 1) {
        const double spacing = c.spacing(n - 1);
        if (std::abs(spacing) < 1e-12)
            throw DomainError("vanvleck: vanishing level spacing Omega_{n-1}");
        const double common = c.k1(n - 1) * c.k1(n - 1) * c.f2(n) * c.gbar() * c.gbar() /
                              (c.dq() * c.dq());
        out.w1_n = -common * c.eps() * c.eps() / spacing;
        out.w0_n = -common * c.d0() * c.d0() / (c.dq() + spacing);
    }
    return out;
}

double w_sum(const VvContext& c, int n) {
    if (n == 0) return 0.0;
    const VvCoefficients v = coefficients(c, n);
    return v.w1_n + v.w0_n;
}

VvBlock block(const VvContext& c, int n) {
    const VvCoefficients vn = coefficients(c, n);
    const double w1_np1 = coefficients(c, n + 1).w1_n;
    const double dw_plus = (n + 2) * w_sum(c, n + 2) + n * w_sum(c, n);
    const double dw_minus = (n + 2) * w_sum(c, n + 2) - n * w_sum(c, n);

    VvBlock b;
    b.n = n;
    b.eta = c.spacing(n) + 2.0 * c.spec().omega() * n * c.f2(n + 1) + dw_minus;
    b.delta_small = c.dq() - c.spacing(n) + 2.0 * (n + 1) * w1_np1 - dw_plus;
    const double off = std::sqrt(n + 1.0) * vn.delta_n;
    b.alpha = std::atan2(-2.0 * off, b.delta_small);
    const double root = std::sqrt(b.delta_small * b.delta_small + 4.0 * off * off);
    b.e_lower = 0.5 * (b.eta - root);
    b.e_upper = 0.5 * (b.eta + root);
    return b;
}

} // namespace

VvCoefficients vv_coefficients(const CoupledModel& model, int n) {
    require_one_quantum(model);
    if (n < 0 || n >= model.osc.fock_dim()) throw DomainError("vv_coefficients: n out of range");
    return coefficients(VvContext(model), n);
}

VvBlock vv_block(const CoupledModel& model, int n) {
    require_one_quantum(model);
    if (n < 0 || n + 2 >= model.osc.fock_dim())
        throw DomainError("vv_block: n out of range for the truncation");
    return block(VvContext(model), n);
}

double vv_ground_energy(const CoupledModel& model) {
    require_one_quantum(model);
    const VvContext c(model);
    return -c.dq() / 2.0 + w_sum(c, 1);
}

std::vector<double> vv_levels(const CoupledModel& model, int count) {
    require_one_quantum(model);
    if (count < 1) throw DomainError("vv_levels: count must be >= 1");
    const VvContext c(model);
    std::vector<double> levels{-c.dq() / 2.0 + w_sum(c, 1)};
    // Blocks are added until two consecutive ones sit entirely above the
    // count-th smallest level found so far, so small oscillator frequencies
    // still get every contributing manifold.
    int above = 0;
    for (int n = 0; n + 2 < model.osc.fock_dim() && above < 2; ++n) {
        const VvBlock b = block(c, n);
        levels.push_back(b.e_lower);
        levels.push_back(b.e_upper);
        if (static_cast<int>(levels.size()) >= count + 2) {
            std::vector<double> sorted = levels;
            std::nth_element(sorted.begin(), sorted.begin() + (count - 1), sorted.end());
            above = (b.e_lower > sorted[count - 1]) ? above + 1 : 0;
        }
    }
    std::sort(levels.begin(), levels.end());
    if (static_cast<int>(levels.size()) < count)
        throw DomainError("vv_levels: truncation too small for requested count");
    levels.resize(count);
    return levels;
}

double splitting_estimate(const CoupledModel& model, int n) {
    require_one_quantum(model);
    const VvContext c(model);
    return 2.0 * c.k1(n) * c.f(n + 1) * std::sqrt(n + 1.0) * c.gbar();
}

double resonance_omega(const CoupledModel& model, int n) {
    require_one_quantum(model);
    // Bisect Delta_Q - Omega_n(omega) - (n+2) w0_{n+2} - n w0_n = 0 in omega.
    auto detuning = [&](double omega) {
        CoupledModel m = model;
        m.osc = OscillatorSpec(model.osc.kind(), model.osc.lambda_inv(), omega,
                               model.osc.fock_dim());
        const VvContext c(m);
        const double bs = (n + 2) * coefficients(c, n + 2).w0_n + n * coefficients(c, n).w0_n;
        return c.dq() - c.spacing(n) - bs;
    };
    const double dq = model.qubit.splitting();
    double lo = 0.2 * dq, hi = 2.5 * dq;
    double flo = detuning(lo);
    if (detuning(hi) * flo > 0.0)
        throw NumericError("resonance_omega: no sign change in bracket", flo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = detuning(mid);
        if (fm == 0.0) return mid;
        if (fm * flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

SMatrices s_matrices(const CoupledModel& model, int fock_dim) {
    require_one_quantum(model);
    const int n_dim = fock_dim;
    if (n_dim < 2 || n_dim > model.osc.fock_dim())
        throw DomainError("s_matrices: fock_dim out of range");
    const VvContext c(model);
    const double g = c.gbar();
    const double g2 = g * g;
    const double dq = c.dq();
    const double eps = c.eps();
    const double d0 = c.d0();

    const auto e_idx = [n_dim](int k) { return k; };
    const auto g_idx = [n_dim](int k) { return n_dim + k; };

    Matrix is1(2 * n_dim, 2 * n_dim);
    Matrix is2(2 * n_dim, 2 * n_dim);
    Matrix prod(2 * n_dim, 2 * n_dim);

    for (int n = 0; n < n_dim; ++n) {
        // ---- iS1 ----
        if (n - 1 >= 0) {
            const int m = n - 1;
            const double val =
                c.k1(n - 1) * c.f(n) * std::sqrt(double(n)) * eps * g / (dq * c.omega_mn(m, n));
            is1(g_idx(m), g_idx(n)) += val;
            is1(e_idx(m), e_idx(n)) -= val;
        }
        if (n + 1 < n_dim) {
            const int m = n + 1;
            const double val = c.k1(n) * c.f(n + 1) * std::sqrt(n + 1.0) * eps * g /
                               (dq * c.omega_mn(m, n));
            is1(g_idx(m), g_idx(n)) += val;
            is1(e_idx(m), e_idx(n)) -= val;

            const double eg = -(d0 / dq) * c.k1(n) * c.f(n + 1) * std::sqrt(n + 1.0) * g /
                              (dq + c.omega_mn(m, n));
            is1(e_idx(m), g_idx(n)) += eg;
            is1(g_idx(n), e_idx(m)) -= eg; // anti-Hermitian completion
        }

        // ---- iS2 ----
        if (n - 2 >= 0) {
            const int m = n - 2;
            const double pre = c.k1(n - 1) * c.k1(n - 2) * c.f(n) * c.f(n - 1) *
                               std::sqrt(double(n) * (n - 1.0));
            const double gg =
                -(pre / (dq * dq * c.omega_mn(m, n))) *
                (-eps * eps * (2.0 * c.omega_mn(m, n - 1) - c.omega_mn(m, n)) /
                     (2.0 * c.spacing(n - 1) * c.omega_mn(m, n - 1)) +
                 d0 * d0 / (dq - c.omega_mn(m, n - 1))) *
                g2;
            const double ee =
                (pre / (dq * dq * c.omega_mn(m, n))) *
                (eps * eps * (2.0 * c.omega_mn(m, n - 1) - c.omega_mn(m, n)) /
                     (2.0 * c.spacing(n - 1) * c.omega_mn(m, n - 1)) +
                 d0 * d0 / (dq + c.spacing(n - 1))) *
                g2;
            const double eg = -(eps * d0 / (dq * dq)) * (pre / (dq + c.omega_mn(m, n))) *
                              ((c.omega_mn(m, n - 1) - c.spacing(n - 1)) /
                               (c.spacing(n - 1) * c.omega_mn(m, n - 1))) *
                              g2;
            is2(g_idx(m), g_idx(n)) += gg;
            is2(e_idx(m), e_idx(n)) += ee;
            is2(e_idx(m), g_idx(n)) += eg;
            is2(g_idx(n), e_idx(m)) -= eg;
        }
        if (n + 2 < n_dim) {
            const int m = n + 2;
            const double pre = c.k1(n) * c.k1(n + 1) * c.f(n + 1) * c.f(n + 2) *
                               std::sqrt((n + 1.0) * (n + 2.0));
            const double gg =
                -(pre / (dq * dq * c.omega_mn(m, n))) *
                (eps * eps * (2.0 * c.omega_mn(m, n + 1) - c.omega_mn(m, n)) /
                     (2.0 * c.spacing(n) * c.omega_mn(m, n + 1)) +
                 d0 * d0 / (dq + c.spacing(n))) *
                g2;
            const double ee =
                -(pre / (dq * dq * c.omega_mn(m, n))) *
                (eps * eps * (2.0 * c.omega_mn(m, n + 1) - c.omega_mn(m, n)) /
                     (2.0 * c.spacing(n) * c.omega_mn(m, n + 1)) -
                 d0 * d0 / (dq + c.omega_mn(m, n + 1))) *
                g2;
            const double eg =
                -(eps * d0 / (dq * dq)) * (pre / (dq + c.omega_mn(m, n))) *
                (0.5 * (dq - c.omega_mn(m, n)) / (c.omega_mn(m, n + 1) * (dq + c.spacing(n))) +
                 0.5 * (dq + c.omega_mn(m, n)) / (c.spacing(n) * (dq + c.omega_mn(m, n + 1))) -
                 (dq / (dq + c.spacing(n))) *
                     (1.0 / c.omega_mn(m, n + 1) + 1.0 / c.spacing(n))) *
                g2;
            is2(g_idx(m), g_idx(n)) += gg;
            is2(e_idx(m), e_idx(n)) += ee;
            is2(e_idx(m), g_idx(n)) += eg;
            is2(g_idx(n), e_idx(m)) -= eg;
        }
        {
            // iS2, qubit-flipping diagonal (m = n)
            const int m = n;
            double eg = 0.0;
            if (n + 1 < n_dim) {
                eg += -(eps * d0 / (dq * dq)) *
                      (c.k1(n) * c.k1(n) * c.f2(n + 1) * (n + 1.0) / (dq + c.omega_mn(m, n))) *
                      (0.5 * (dq - c.omega_mn(m, n)) /
                           (c.omega_mn(m, n + 1) * (dq + c.spacing(n))) -
                       (dq / (dq + c.spacing(n))) *
                           (1.0 / c.spacing(n) + 1.0 / c.omega_mn(m, n + 1))) *
                      g2;
            }
            if (n >= 1) {
                eg += (eps * d0 / (dq * dq)) *
                      (c.k1(n - 1) * c.k1(n - 1) * c.f2(n) * n / (dq + c.omega_mn(m, n))) *
                      (0.5 * (dq + c.omega_mn(m, n)) /
                           (c.spacing(n - 1) * (dq + c.omega_mn(m, n - 1))) -
                       1.0 / c.spacing(n - 1) + 1.0 / c.omega_mn(m, n - 1)) *
                      g2;
            }
            if (eg != 0.0) {
                is2(e_idx(m), g_idx(n)) += eg;
                is2(g_idx(n), e_idx(m)) -= eg;
            }
        }

        // ---- iS1 * iS1 (closed-form product matrix; symmetric) ----
        if (n - 2 >= 0) {
            const int m = n - 2;
            const double val = -(eps * eps / (dq * dq)) * c.k1(n - 2) * c.k1(n - 1) *
                               c.f(n - 1) * c.f(n) * std::sqrt(double(n) * (n - 1.0)) /
                               (c.omega_mn(m, n - 1) * c.spacing(n - 1)) * g2;
            prod(g_idx(m), g_idx(n)) += val;
            prod(e_idx(m), e_idx(n)) += val;
        }
        if (n + 2 < n_dim) {
            const int m = n + 2;
            const double val = (eps * eps / (dq * dq)) * c.k1(n + 1) * c.k1(n) * c.f(n + 1) *
                               c.f(n + 2) * std::sqrt((n + 1.0) * (n + 2.0)) /
                               (c.omega_mn(m, n + 1) * c.spacing(n)) * g2;
            prod(g_idx(m), g_idx(n)) += val;
            prod(e_idx(m), e_idx(n)) += val;

            const double eg = (eps * d0 / dq) * c.k1(n) * c.k1(n + 1) * c.f(n + 1) *
                              c.f(n + 2) * std::sqrt((n + 1.0) * (n + 2.0)) *
                              (c.spacing(n) - c.omega_mn(m, n + 1)) /
                              (c.omega_mn(m, n + 1) * c.spacing(n) * (dq + c.spacing(n)) *
                               (dq + c.omega_mn(m, n + 1))) *
                              g2;
            prod(e_idx(m), g_idx(n)) += eg;
            prod(g_idx(n), e_idx(m)) += eg; // symmetric completion
        }
        {
            const int m = n;
            double eg = 0.0;
            if (n + 1 < n_dim) {
                eg += (eps * d0 / (dq * dq)) * c.k1(n) * c.k1(n) * c.f2(n + 1) * (n + 1.0) /
                      (c.omega_mn(m, n + 1) * (dq + c.spacing(n))) * g2;
            }
            if (n >= 1) {
                eg += (eps * d0 / (dq * dq)) * c.k1(n - 1) * c.k1(n - 1) * c.f2(n) * n /
                      (c.spacing(n - 1) * (dq + c.omega_mn(m, n - 1))) * g2;
            }
            if (eg != 0.0) {
                prod(e_idx(m), g_idx(n)) += eg;
                prod(g_idx(n), e_idx(m)) += eg;
            }
        }
    }

    return SMatrices{std::move(is1), std::move(is2), std::move(prod)};
}

namespace {

VvState apply_generator(const CoupledModel& model, std::vector<double> eff, int fock_dim) {
    const SMatrices s = s_matrices(model, fock_dim);
    const std::vector<double> t1 = matvec(s.is1, eff);
    const std::vector<double> t2 = matvec(s.is2, eff);
    const std::vector<double> t3 = matvec(s.is1_is1, eff);
    std::vector<double> out(eff.size());
    for (std::size_t i = 0; i < eff.size(); ++i)
        out[i] = eff[i] - t1[i] - t2[i] + 0.5 * t3[i];
    const double norm = norm2(out);
    if (!(norm > 0.0)) throw NumericError("vv_state: zero norm", norm);
    for (double& v : out) v /= norm;
    return VvState{std::move(out), std::abs(norm - 1.0)};
}

} // namespace

VvState vv_ground_state(const CoupledModel& model, int fock_dim) {
    require_one_quantum(model);
    std::vector<double> eff(2 * fock_dim, 0.0);
    eff[fock_dim] = 1.0; // |g,0>
    return apply_generator(model, std::move(eff), fock_dim);
}

VvState vv_doublet_state(const CoupledModel& model, int n, bool upper, int fock_dim) {
    require_one_quantum(model);
    if (n < 0 || n + 1 >= fock_dim) throw DomainError("vv_doublet_state: n out of range");
    const VvBlock b = vv_block(model, n);
    std::vector<double> eff(2 * fock_dim, 0.0);
    const double ch = std::cos(b.alpha / 2.0);
    const double sh = std::sin(b.alpha / 2.0);
    if (upper) {
        eff[n] = ch;                  // |e,n>
        eff[fock_dim + n + 1] = -sh;  // |g,n+1>
    } else {
        eff[n] = sh;
        eff[fock_dim + n + 1] = ch;
    }
    return apply_generator(model, std::move(eff), fock_dim);
}

} // namespace qno

#include "qno/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qno/eigensolver.hpp"
#include "qno/errors.hpp"
#include "qno/parallel.hpp"
#include "qno/quadrature.hpp"

namespace qno {

DensityMatrix::DensityMatrix(Matrix data) : data_(std::move(data)) {
    if (data_.rows() != data_.cols()) throw DomainError("DensityMatrix: must be square");
    const std::size_t n = data_.rows();
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += data_(i, i);
    if (std::abs(trace - 1.0) > 1e-10)
        throw DomainError("DensityMatrix: trace deviates from 1 by " +
                          std::to_string(std::abs(trace - 1.0)));
    const SpectrumResult s = eigh(OperatorMatrix(data_, Symmetry::Symmetric));
    if (s.values.front() < -1e-10)
        throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(s.values.front()));
}

namespace {

std::size_t half_dim(const std::vector<double>& state) {
    if (state.size() < 2 || state.size() % 2 != 0)
        throw DomainError("reduce: state must live in a 2N-dimensional composite space");
    const double dev = std::abs(norm2(state) - 1.0);
    if (dev > 1e-8)
        throw DomainError("reduce: state norm deviates from 1 by " + std::to_string(dev));
    return state.size() / 2;
}

} // namespace

DensityMatrix reduce_qubit(const std::vector<double>& state) {
    const std::size_t n = half_dim(state);
    Matrix rho(2, 2);
    for (std::size_t q = 0; q < 2; ++q)
        for (std::size_t r = 0; r < 2; ++r) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += state[q * n + k] * state[r * n + k];
            rho(q, r) = s;
        }
    return DensityMatrix(std::move(rho));
}

DensityMatrix reduce_oscillator(const std::vector<double>& state) {
    const std::size_t n = half_dim(state);
    Matrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double s = state[i] * state[j] + state[n + i] * state[n + j];
            rho(i, j) = s;
            rho(j, i) = s;
        }
    return DensityMatrix(std::move(rho));
}

double mean_excitation(const DensityMatrix& rho) {
    double s = 0.0;
    for (std::size_t k = 0; k < rho.dim(); ++k) s += k * rho(k, k);
    return s;
}

double momentum_variance(const DensityMatrix& rho, const OperatorMatrix& momentum) {
    if (momentum.symmetry() != Symmetry::Antisymmetric)
        throw DomainError("momentum_variance: momentum must carry the Antisymmetric tag");
    if (rho.dim() != momentum.dim()) throw DomainError("momentum_variance: dimension mismatch");
    const std::size_t n = rho.dim();
    // <p^2> = -Tr(rho M M); <p> = i Tr(rho M) = 0 exactly (symmetric x antisymmetric).
    double p2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double mm = 0.0;
            for (std::size_t j = 0; j < n; ++j) mm += momentum(i, j) * momentum(j, k);
            p2 -= rho(k, i) * mm;
        }
    return p2;
}

double entropy(const DensityMatrix& rho) {
    const SpectrumResult s = eigh(OperatorMatrix(rho.data(), Symmetry::Symmetric));
    double h = 0.0;
    for (double lambda : s.values)
        if (lambda > 1e-14) h -= lambda * std::log2(lambda);
    return h;
}

namespace {

// Composite Simpson weights on a uniform grid (odd point count is exact
// Simpson; an even count gets a trapezoid patch on the last interval).
std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    int last = (n % 2 == 1) ? n - 1 : n - 2;
    for (int i = 0; i < last; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (n % 2 == 0) {
        w[n - 2] += h / 2.0;
        w[n - 1] += h / 2.0;
    }
    return w;
}

} // namespace

WignerGrid wigner(const DensityMatrix& rho, const PtBasis& basis, const GridSpec& grid) {
    if (grid.nx < 2 || grid.np < 2) throw DomainError("wigner: grid must have >= 2 points per axis");
    if (!(grid.x_max > grid.x_min) || !(grid.p_max > grid.p_min))
        throw DomainError("wigner: empty grid range");

    const int levels = basis.n_levels();
    const int dim = static_cast<int>(rho.dim());
    for (int k = levels; k < dim; ++k)
        if (std::abs(rho(k, k)) > 1e-10)
            throw DomainError("wigner: basis does not cover occupied level " + std::to_string(k));
    // Drop the unoccupied tail: cross terms are bounded by sqrt(rho_kk), so a
    // 1e-18 diagonal cut keeps every retained element above ~1e-9 relevance.
    int b = std::min(levels, dim);
    while (b > 1 && std::abs(rho(b - 1, b - 1)) < 1e-18) --b;

    WignerGrid out;
    out.x_axis.resize(grid.nx);
    out.p_axis.resize(grid.np);
    const double hx = (grid.x_max - grid.x_min) / (grid.nx - 1);
    const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);
    for (int i = 0; i < grid.nx; ++i) out.x_axis[i] = grid.x_min + i * hx;
    for (int j = 0; j < grid.np; ++j) out.p_axis[j] = grid.p_min + j * hp;
    out.values = Matrix(grid.nx, grid.np);

    const double sqrt_omega = std::sqrt(basis.omega());
    // All lengths below are dimensionless (x~ = sqrt(omega) x).
    const double support = basis.support_radius(b - 1) * sqrt_omega;
    const double edge = (basis.kind() == OscKind::Tpt)
                            ? basis.domain_half_width() * sqrt_omega
                            : std::numeric_limits<double>::infinity();

    parallel_for(grid.nx, [&](std::size_t row) {
        const double x = out.x_axis[row];
        double y_half = 2.0 * (support + std::abs(x));
        if (basis.kind() == OscKind::Tpt) {
            if (std::abs(x) >= edge) return; // W vanishes outside the well
            y_half = std::min(y_half, 2.0 * (edge - std::abs(x)));
        }

        std::vector<double> vp(levels), vm(levels), rv(b);
        std::vector<double> ys, ws;
        std::vector<double> cur(grid.np, 0.0), prev(grid.np, 0.0);
        int panels = 8;
        bool converged = false;
        double diff = 0.0;
        for (int refine = 0; refine < 9 && !converged; ++refine, panels *= 2) {
            panel_nodes(-y_half, y_half, panels, ys, ws);
            std::fill(cur.begin(), cur.end(), 0.0);
            for (std::size_t q = 0; q < ys.size(); ++q) {
                basis.eval_all_scaled(x + 0.5 * ys[q], vp.data());
                basis.eval_all_scaled(x - 0.5 * ys[q], vm.data());
                double bilinear = 0.0;
                for (int m = 0; m < b; ++m) {
                    double s = 0.0;
                    for (int n = 0; n < b; ++n) s += rho(m, n) * vm[n];
                    rv[m] = s;
                    bilinear += vp[m] * rv[m];
                }
                const double kernel = ws[q] * bilinear;
                for (int j = 0; j < grid.np; ++j)
                    cur[j] += kernel * std::cos(out.p_axis[j] * ys[q]);
            }
            if (refine > 0) {
                diff = 0.0;
                for (int j = 0; j < grid.np; ++j)
                    diff = std::max(diff, std::abs(cur[j] - prev[j]));
                converged = diff < 1e-8 * 2.0 * M_PI;
            }
            prev = cur;
        }
        if (!converged)
            throw NumericError("wigner: y-quadrature did not converge at x = " + std::to_string(x),
                               diff / (2.0 * M_PI));
        for (int j = 0; j < grid.np; ++j) out.values(row, j) = cur[j] / (2.0 * M_PI);
    });

    const std::vector<double> wx = simpson_weights(grid.nx, hx);
    const std::vector<double> wp = simpson_weights(grid.np, hp);
    double norm = 0.0;
    for (int i = 0; i < grid.nx; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < grid.np; ++j) rowsum += wp[j] * out.values(i, j);
        norm += wx[i] * rowsum;
    }
    out.norm_estimate = norm;
    return out;
}

std::vector<std::pair<double, double>> local_maxima_p0(const WignerGrid& w) {
    int j0 = -1;
    for (std::size_t j = 0; j < w.p_axis.size(); ++j)
        if (std::abs(w.p_axis[j]) < 1e-12) {
            j0 = static_cast<int>(j);
            break;
        }
    if (j0 < 0) throw DomainError("local_maxima_p0: grid does not contain p = 0");

    const double gmax = max_abs(w.values);
    std::vector<std::pair<double, double>> maxima;
    const int nx = static_cast<int>(w.x_axis.size());
    for (int i = 1; i + 1 < nx; ++i) {
        const double v = w.values(i, j0);
        if (v > w.values(i - 1, j0) && v > w.values(i + 1, j0) && v > 0.1 * gmax)
            maxima.emplace_back(w.x_axis[i], v);
    }
    return maxima;
}

} // namespace qno

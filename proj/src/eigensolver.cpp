#include "qno/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qno/errors.hpp"

namespace qno {

namespace {

constexpr int kIterationCap = 50; // QL sweeps per eigenvalue

// Householder reduction of the symmetric matrix stored in z to tridiagonal
// form, accumulating the orthogonal transformation in z (A = Z T Z^T).
void tridiagonalize(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(z.rows());
    d.assign(n, 0.0);
    e.assign(n, 0.0);

    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0;
        double scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
            if (scale == 0.0) {
                e[i] = z(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    z(i, k) /= scale;
                    h += z(i, k) * z(i, k);
                }
                double f = z(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                z(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    z(j, i) = z(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
                    for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
                    e[j] = g / h;
                    f += e[j] * z(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = z(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
                }
            }
        } else {
            e[i] = z(i, l);
        }
        d[i] = h;
    }

    d[0] = 0.0;
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) {
        const int l = i;
        if (d[i] != 0.0) {
            for (int j = 0; j < l; ++j) {
                double g = 0.0;
                for (int k = 0; k < l; ++k) g += z(i, k) * z(k, j);
                for (int k = 0; k < l; ++k) z(k, j) -= g * z(k, i);
            }
        }
        d[i] = z(i, i);
        z(i, i) = 1.0;
        for (int j = 0; j < l; ++j) {
            z(j, i) = 0.0;
            z(i, j) = 0.0;
        }
    }
}

// Implicit-shift QL on the tridiagonal (d, e); if z is non-null its columns are
// rotated along so they end up as eigenvectors of the original matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
    const int n = static_cast<int>(d.size());
    if (n == 1) return;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == kIterationCap) {
                    double offdiag = 0.0;
                    for (int k = 0; k < n - 1; ++k) offdiag = std::max(offdiag, std::abs(e[k]));
                    throw NumericError("eigh: QL iteration cap exceeded, off-diagonal norm",
                                       offdiag);
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                int i = m - 1;
                bool underflow = false;
                for (; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z != nullptr) {
                        for (int k = 0; k < n; ++k) {
                            f = (*z)(k, i + 1);
                            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
                            (*z)(k, i) = c * (*z)(k, i) - s * f;
                        }
                    }
                }
                if (underflow && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

void sort_and_fix_signs(std::vector<double>& d, Matrix& z) {
    const int n = static_cast<int>(d.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

    std::vector<double> sorted_d(n);
    Matrix sorted_z(n, n);
    for (int k = 0; k < n; ++k) {
        const int src = order[k];
        sorted_d[k] = d[src];
        int max_row = 0;
        double max_val = 0.0;
        for (int i = 0; i < n; ++i) {
            const double a = std::abs(z(i, src));
            if (a > max_val) {
                max_val = a;
                max_row = i;
            }
        }
        const double flip = (z(max_row, src) < 0.0) ? -1.0 : 1.0;
        for (int i = 0; i < n; ++i) sorted_z(i, k) = flip * z(i, src);
    }
    d = std::move(sorted_d);
    z = std::move(sorted_z);
}

} // namespace

SpectrumResult eigh(const OperatorMatrix& h, double tol) {
    if (h.symmetry() != Symmetry::Symmetric) throw DomainError("eigh: matrix must be Symmetric");
    if (!(tol > 0.0)) throw DomainError("eigh: tol must be > 0");
    const int n = static_cast<int>(h.dim());

    Matrix z = h.data();
    std::vector<double> d, e;
    tridiagonalize(z, d, e);
    ql_implicit(d, e, &z);
    sort_and_fix_signs(d, z);

    SpectrumResult result;
    result.values = std::move(d);
    result.vectors = std::move(z);

    double max_eig = 0.0;
    for (double v : result.values) max_eig = std::max(max_eig, std::abs(v));

    double residual = 0.0;
    for (int k = 0; k < n; ++k) {
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
            double hv = 0.0;
            for (int j = 0; j < n; ++j) hv += h.data()(i, j) * result.vectors(j, k);
            const double r = hv - result.values[k] * result.vectors(i, k);
            norm_sq += r * r;
        }
        residual = std::max(residual, std::sqrt(norm_sq));
    }
    result.residual = residual;
    if (residual > tol * (1.0 + max_eig))
        throw NumericError("eigh: residual exceeds tolerance", residual);

    double ortho = 0.0;
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += result.vectors(i, a) * result.vectors(i, b);
            ortho = std::max(ortho, std::abs(s - (a == b ? 1.0 : 0.0)));
        }
    }
    if (ortho > 1e-10)
        throw NumericError("eigh: eigenvector orthonormality violated", ortho);

    return result;
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> sub) {
    if (sub.size() + 1 != diag.size())
        throw DomainError("tridiagonal_eigenvalues: sub must have length n-1");
    // ql_implicit expects the subdiagonal in e[1..n-1]
    std::vector<double> e(diag.size(), 0.0);
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) e[i + 1] = sub[i];
    ql_implicit(diag, e, nullptr);
    std::sort(diag.begin(), diag.end());
    return diag;
}

SweepResult convergence_sweep(const std::function<OperatorMatrix(int)>& make, int k,
                              int n_start, int n_step, double tol, int n_max) {
    if (k < 1) throw DomainError("convergence_sweep: k must be >= 1");
    if (n_step < 1) throw DomainError("convergence_sweep: n_step must be >= 1");

    double best_delta = std::numeric_limits<double>::infinity();
    int n = n_start;
    SpectrumResult prev = eigh(make(n));
    while (n + n_step <= n_max) {
        SpectrumResult next;
        try {
            next = eigh(make(n + n_step));
        } catch (const GuardError&) {
            throw NumericError("convergence_sweep: truncation guard reached before convergence",
                               best_delta);
        }
        if (static_cast<int>(prev.values.size()) < k)
            throw DomainError("convergence_sweep: matrix smaller than requested k");
        double delta = 0.0;
        for (int i = 0; i < k; ++i) delta = std::max(delta, std::abs(next.values[i] - prev.values[i]));
        best_delta = std::min(best_delta, delta);
        if (delta < tol) return SweepResult{n, std::move(prev), delta};
        prev = std::move(next);
        n += n_step;
    }
    throw NumericError("convergence_sweep: n_max reached before convergence", best_delta);
}

} // namespace qno

#pragma once

#include <utility>
#include <vector>

#include "qno/matrix.hpp"
#include "qno/pt_exact.hpp"

namespace qno {

// Real symmetric density matrix (states produced here have real amplitudes).
// Validated at construction: trace 1 to 1e-10, symmetric to 1e-12,
// eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix data);

    std::size_t dim() const { return data_.rows(); }
    const Matrix& data() const { return data_; }
    double operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

private:
    Matrix data_;
};

// Partial traces of a unit-norm 2N-vector in the fixed composite order
// (|e,n> block first). Throws DomainError if the norm deviates by > 1e-8.
DensityMatrix reduce_qubit(const std::vector<double>& state);
DensityMatrix reduce_oscillator(const std::vector<double>& state);

// Tr(rho n_hat).
double mean_excitation(const DensityMatrix& rho);

// <p~^2> - <p~>^2 with p~ = i M; the first moment vanishes identically for a
// real symmetric rho, so the result is -Tr(rho M M).
double momentum_variance(const DensityMatrix& rho, const OperatorMatrix& momentum);

// Von Neumann entropy in bits, eigenvalues below 1e-14 dropped.
double entropy(const DensityMatrix& rho);

struct GridSpec {
    double x_min = -6.0, x_max = 6.0;
    int nx = 121;
    double p_min = -6.0, p_max = 6.0;
    int np = 121;
};

// W on a rectangular (x~, p~) grid; values(i, j) = W(x_i, p_j).
struct WignerGrid {
    std::vector<double> x_axis;
    std::vector<double> p_axis;
    Matrix values;
    double norm_estimate = 0.0;
};

// W(x,p) = (1/2pi) Int rho(x+y/2, x-y/2) cos(py) dy with
// rho(x,x') = sum rho_mn psi_n(x) psi_m(x') in the given basis; the sine part
// vanishes for real symmetric rho. Dimensionless axes. Throws DomainError if
// the basis does not cover every occupied level (diagonal weight > 1e-10).
WignerGrid wigner(const DensityMatrix& rho, const PtBasis& basis, const GridSpec& grid);

// Strict local maxima of W(x, 0) above 10% of the grid maximum, sorted by x.
// The grid must contain p = 0.
std::vector<std::pair<double, double>> local_maxima_p0(const WignerGrid& w);

} // namespace qno

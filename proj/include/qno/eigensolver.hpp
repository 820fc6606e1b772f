#pragma once

#include <functional>
#include <vector>

#include "qno/matrix.hpp"

namespace qno {

// Full decomposition of a real symmetric matrix.
//   values   ascending eigenvalues
//   vectors  column k is the eigenvector of values[k]; columns orthonormal to
//            1e-10 and sign-fixed so the largest-magnitude component is positive
//   residual max_k ||H v_k - lambda_k v_k||_2, bounded by tol*(1 + max|lambda|)
struct SpectrumResult {
    std::vector<double> values;
    Matrix vectors;
    double residual = 0.0;
};

// Dense symmetric eigendecomposition: Householder tridiagonalization followed
// by implicit-shift QL with eigenvector accumulation (iteration cap 50 per
// eigenvalue). Deterministic bit-for-bit for identical input.
SpectrumResult eigh(const OperatorMatrix& h, double tol = 1e-9);

// Eigenvalues only of a symmetric tridiagonal matrix; diag has length n,
// sub has length n-1 (couples i and i+1). Ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> sub);

struct SweepResult {
    int fock_dim = 0;        // smallest N whose lowest k eigenvalues are converged
    SpectrumResult spectrum; // decomposition at that N
    double last_delta = 0.0; // eigenvalue movement over the final N -> N+step
};

// Grows the truncation until the lowest k eigenvalues of make(N) move by less
// than tol when N increases by n_step. Throws NumericError with the best
// achieved delta if the guard (or n_max) prevents convergence.
SweepResult convergence_sweep(const std::function<OperatorMatrix(int)>& make, int k,
                              int n_start, int n_step, double tol, int n_max = 400);

} // namespace qno

#pragma once

#include <functional>
#include <vector>

namespace qno {

// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Computed by Newton iteration on the Legendre recurrence; cached per order.
const GaussLegendreRule& gauss_legendre(int order);

// Fills `xs`/`ws` with the nodes and weights of `panels` equal 16-point
// Gauss-Legendre panels covering [a, b].
void panel_nodes(double a, double b, int panels, std::vector<double>& xs,
                 std::vector<double>& ws);

// Integrates f over [a, b] with 16-point panels, doubling the panel count
// until two successive estimates agree to tol_abs. Throws NumericError with
// the achieved difference if max_doublings is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol_abs, int max_doublings = 16);

} // namespace qno

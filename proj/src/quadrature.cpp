#include "qno/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "qno/errors.hpp"

namespace qno {

namespace {

GaussLegendreRule compute_rule(int order) {
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-based initial guess for the i-th root of P_order.
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[order - 1 - i] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

constexpr int kPanelOrder = 16;

} // namespace

const GaussLegendreRule& gauss_legendre(int order) {
    static std::map<int, GaussLegendreRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
    return it->second;
}

void panel_nodes(double a, double b, int panels, std::vector<double>& xs,
                 std::vector<double>& ws) {
    const GaussLegendreRule& rule = gauss_legendre(kPanelOrder);
    xs.resize(static_cast<std::size_t>(panels) * kPanelOrder);
    ws.resize(xs.size());
    const double h = (b - a) / panels;
    std::size_t idx = 0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (int i = 0; i < kPanelOrder; ++i, ++idx) {
            xs[idx] = mid + 0.5 * h * rule.nodes[i];
            ws[idx] = 0.5 * h * rule.weights[i];
        }
    }
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol_abs, int max_doublings) {
    std::vector<double> xs, ws;
    int panels = 1;
    panel_nodes(a, b, panels, xs, ws);
    double prev = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) prev += ws[i] * f(xs[i]);
    double diff = 0.0;
    for (int k = 0; k < max_doublings; ++k) {
        panels *= 2;
        panel_nodes(a, b, panels, xs, ws);
        double cur = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) cur += ws[i] * f(xs[i]);
        diff = std::abs(cur - prev);
        if (diff < tol_abs) return cur;
        prev = cur;
    }
    throw NumericError("integrate_adaptive: tolerance not met", diff);
}

} // namespace qno

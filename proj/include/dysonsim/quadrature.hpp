#pragma once

#include <vector>

namespace dysonsim {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Rules are computed once per order and shared; the returned reference stays
// valid for the lifetime of the program.
const GaussLegendreRule& gauss_legendre(int points);

// Composite Gauss-Legendre over [a, b] split into `panels` equal panels.
template <class F>
double integrate_composite(F&& f, double a, double b, int points = 10, int panels = 1) {
    const GaussLegendreRule& rule = gauss_legendre(points);
    const double width = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * width;
        const double half = 0.5 * width;
        const double mid = lo + half;
        double panel = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            panel += rule.weights[k] * f(mid + half * rule.nodes[k]);
        }
        total += half * panel;
    }
    return total;
}

} // namespace dysonsim

#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "symform/beta_density.hpp"
#include "symform/errors.hpp"

namespace symform {

struct GaussLegendreRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Newton iteration on P_n with the three-term recurrence; the classical
// gauleg construction.
inline GaussLegendreRule gauss_legendre(int npoints) {
    if (npoints < 1) throw InvalidInputError("gauss_legendre: need at least one node");
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(npoints));
    rule.weights.resize(static_cast<std::size_t>(npoints));
    const int m = (npoints + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (npoints + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < npoints; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = npoints * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(npoints - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(npoints - 1 - i)] = w;
    }
    return rule;
}

// Composite Gauss-Legendre grid on [-T, T]. The defaults put the truncated
// beta tail (~e^{-pi T}) far below abs_tol.
struct QuadratureSpec {
    double truncation = 12.0;
    int panels_per_unit = 8;
    int nodes_per_panel = 16;
    double abs_tol = 1e-9;

    void validate() const {
        if (!(truncation > 0.0)) throw InvalidInputError("QuadratureSpec: truncation must be > 0");
        if (panels_per_unit < 1 || nodes_per_panel < 1)
            throw InvalidInputError("QuadratureSpec: panel/node counts must be >= 1");
        if (!(abs_tol > 0.0)) throw InvalidInputError("QuadratureSpec: abs_tol must be > 0");
    }
};

struct QuadNode {
    double t;
    double weight;  // plain GL weight, no density factor
};

inline std::vector<QuadNode> composite_nodes(const QuadratureSpec& spec) {
    spec.validate();
    const GaussLegendreRule rule = gauss_legendre(spec.nodes_per_panel);
    const int panels = static_cast<int>(std::ceil(2.0 * spec.truncation * spec.panels_per_unit));
    const double width = 2.0 * spec.truncation / panels;
    std::vector<QuadNode> nodes;
    nodes.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
    for (int p = 0; p < panels; ++p) {
        const double lo = -spec.truncation + p * width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            nodes.push_back({lo + 0.5 * width * (rule.nodes[i] + 1.0), 0.5 * width * rule.weights[i]});
        }
    }
    return nodes;
}

// Pairwise reduction; keeps the sum independent of evaluation chunking to
// well below 1e-12.
template <typename T, typename EvalFn>
T pairwise_reduce(std::size_t count, EvalFn&& eval) {
    if (count == 0) throw InvalidInputError("pairwise_reduce: empty range");
    const std::function<T(std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi) -> T {
        if (hi - lo == 1) return eval(lo);
        const std::size_t mid = lo + (hi - lo) / 2;
        return rec(lo, mid) + rec(mid, hi);
    };
    return rec(0, count);
}

// integral of beta_theta(t) f(t) dt over [-T, T]; theta = 1 is the point
// mass, so the result is f(0)
template <typename Fn>
double quad_beta(double theta, Fn&& f, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (beta_tail_bound(theta, spec.truncation) > spec.abs_tol)
        throw InvalidInputError("quad_beta: truncation too small for requested abs_tol");
    if (beta_is_atomic(theta)) return f(0.0);
    const auto nodes = composite_nodes(spec);
    return pairwise_reduce<double>(nodes.size(), [&](std::size_t i) {
        const double val = f(nodes[i].t);
        if (!std::isfinite(val))
            throw NumericalFailureError("quad_beta: non-finite integrand at t = " +
                                        std::to_string(nodes[i].t));
        return nodes[i].weight * beta_density(theta, nodes[i].t) * val;
    });
}

// integral over [0, 1) after the substitution t = u/(1-u), for the
// half-line operator integrals; 8 panels x 64 nodes
template <typename MatFn>
auto quad_halfline(MatFn&& f_of_t) -> decltype(f_of_t(0.0)) {
    const GaussLegendreRule rule = gauss_legendre(64);
    const int panels = 8;
    const double width = 1.0 / panels;
    using Mat = decltype(f_of_t(0.0));
    std::vector<double> ts, ws;
    for (int p = 0; p < panels; ++p) {
        const double lo = p * width;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double u = lo + 0.5 * width * (rule.nodes[i] + 1.0);
            const double t = u / (1.0 - u);
            const double jac = 1.0 / ((1.0 - u) * (1.0 - u));
            ts.push_back(t);
            ws.push_back(0.5 * width * rule.weights[i] * jac);
        }
    }
    return pairwise_reduce<Mat>(ts.size(), [&](std::size_t i) -> Mat {
        return Mat(ws[i] * f_of_t(ts[i]));
    });
}

}  // namespace symform

/// @file quadrature.hpp
/// @brief Composite Gauss-Legendre rules. Nodes are interior to every
///        subinterval, so integrable endpoint singularities are never sampled.

#pragma once

#include <array>
#include <span>
#include <stdexcept>

namespace infotherm::quadrature {

struct Node {
    double x; // on [-1, 1]
    double w;
};

inline constexpr std::array<Node, 1> kGauss1{{{0.0, 2.0}}};
inline constexpr std::array<Node, 2> kGauss2{{{-0.57735026918962576451, 1.0},
                                              {0.57735026918962576451, 1.0}}};
inline constexpr std::array<Node, 3> kGauss3{{{-0.77459666924148337704, 0.55555555555555555556},
                                              {0.0, 0.88888888888888888889},
                                              {0.77459666924148337704, 0.55555555555555555556}}};
inline constexpr std::array<Node, 4> kGauss4{{{-0.86113631159405257522, 0.34785484513745385737},
                                              {-0.33998104358485626480, 0.65214515486254614263},
                                              {0.33998104358485626480, 0.65214515486254614263},
                                              {0.86113631159405257522, 0.34785484513745385737}}};
inline constexpr std::array<Node, 5> kGauss5{{{-0.90617984593866399280, 0.23692688505618908751},
                                              {-0.53846931010568309104, 0.47862867049936646804},
                                              {0.0, 0.56888888888888888889},
                                              {0.53846931010568309104, 0.47862867049936646804},
                                              {0.90617984593866399280, 0.23692688505618908751}}};

inline std::span<const Node> gauss_legendre_nodes(int points) {
    switch (points) {
        case 1: return kGauss1;
        case 2: return kGauss2;
        case 3: return kGauss3;
        case 4: return kGauss4;
        case 5: return kGauss5;
        default: throw std::domain_error("gauss_legendre_nodes: supported orders are 1..5");
    }
}

/// Integral of f over [a, b] with `intervals` equal panels of a `points`-node
/// Gauss-Legendre rule (points = 1 is the composite midpoint rule).
template <class F>
double integrate_open(F&& f, double a, double b, int intervals, int points = 1) {
    if (intervals < 1) throw std::domain_error("integrate_open: intervals must be >= 1");
    const auto nodes = gauss_legendre_nodes(points);
    const double h = (b - a) / intervals;
    double sum = 0.0;
    for (int i = 0; i < intervals; ++i) {
        const double mid = a + (i + 0.5) * h;
        double panel = 0.0;
        for (const auto& n : nodes) panel += n.w * f(mid + 0.5 * h * n.x);
        sum += 0.5 * h * panel;
    }
    return sum;
}

} // namespace infotherm::quadrature

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hurstlab/hurst.hpp"

namespace hurstlab {

// Exact affine function a + b H of the Hurst index. All exponents produced
// by the calculus have a in (1/2) Z and b in Z; both are stored doubled so
// comparisons are exact integer comparisons.
struct AffineInH {
    std::int64_t const2 = 0;  // 2a
    std::int64_t hcoef2 = 0;  // 2b

    double at(double h) const { return 0.5 * (static_cast<double>(const2) +
                                              static_cast<double>(hcoef2) * h); }
    std::string pretty() const;

    friend bool operator==(const AffineInH&, const AffineInH&) = default;
    AffineInH& operator+=(const AffineInH& o) {
        const2 += o.const2;
        hcoef2 += o.hcoef2;
        return *this;
    }
};

AffineInH affine_in_h(double constant, double h_coefficient);

// A half-edge slot: slot 1 carries an indicator-type kernel, slot 2 a
// second-difference kernel.
struct SlotRef {
    std::int32_t vertex = 0;
    std::int32_t slot = 1;  // 1 or 2

    friend auto operator<=>(const SlotRef&, const SlotRef&) = default;
};

// Vertices carry nonnegative weights q on each of their two slots; edges
// carry positive weights theta on slot pairs across *distinct* vertices.
class WeightedGraph {
public:
    std::int32_t add_vertex(std::string name);

    void set_vertex_weight(std::int32_t vertex, std::int32_t slot, std::int64_t weight);
    void add_edge_weight(SlotRef a, SlotRef b, std::int64_t weight);

    std::int64_t vertex_count() const { return std::ssize(names_); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    std::int64_t vertex_weight(std::int32_t vertex, std::int32_t slot) const;
    const std::map<std::pair<SlotRef, SlotRef>, std::int64_t>& edge_weights() const {
        return theta_;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::array<std::int64_t, 2>> q_;
    std::map<std::pair<SlotRef, SlotRef>, std::int64_t> theta_;
};

struct ComponentReport {
    std::vector<std::string> vertices;
    std::int64_t q_bar = 0;
    std::int64_t q_bar_1 = 0;
    std::int64_t q_bar_2 = 0;
    std::int64_t theta_bar = 0;
    std::int64_t e1_edges = 0;
    std::int64_t e2_edges = 0;
    std::int64_t ell2 = 0;
    AffineInH e_q;
    AffineInH e_theta;
    AffineInH e;
};

struct ExponentReport {
    std::vector<ComponentReport> components;
    AffineInH total;
};

// Connected components of the projected graph (vertex pairs with positive
// total edge weight); isolated vertices are singleton components.
std::vector<WeightedGraph> components(const WeightedGraph& g);

// Projected vertex pairs split by slot content: E2 collects pairs with any
// weight on a slot pair other than (1,1); E1 the pairs whose weight sits on
// (1,1) only.
struct EdgeClassification {
    std::vector<std::pair<std::int32_t, std::int32_t>> e1;
    std::vector<std::pair<std::int32_t, std::int32_t>> e2;
};
EdgeClassification classify_edges(const WeightedGraph& g);

// Maximum number of E2 edges over spanning trees of a connected graph,
// computed as |V| minus the number of components of the E2 subgraph.
// Throws on disconnected input.
std::int64_t ell2(const WeightedGraph& connected_component);

// The exponent of each component and their sum:
//   e_q = -1/2 - H qbar      (qbar2 > 0, qbar1 = 0)
//       = -1 - H (qbar - 1)  (qbar1 > 0)
//       = 0                  (qbar = 0)
//   e_theta = 1 - 2 H thetabar + (2H - 1)(|V| - 1 - ell2)
ExponentReport exponent(const WeightedGraph& g);

struct CatalogEntry {
    std::string name;
    WeightedGraph graph;
    AffineInH expected;
};

// The 14 two-slot graphs whose functionals drive the expansion analysis.
const std::vector<CatalogEntry>& builtin_catalog();

// sqrt E[I_n^2] for catalog entries whose functional (with unit weights,
// single scale) is a finite sum of multiple integrals of order <= 3 with
// indicator / second-difference kernels. Supported: fig1711-fig1714,
// fig1717-fig1719. Chaos pairings are evaluated exactly through permanents
// of Gram matrices built from the closed-form inner products.
double exact_l2_norm(const std::string& name, std::int64_t n, Hurst h);

// Monte Carlo counterpart: samples fGn grids, evaluates the multiple
// integrals through the explicit Hermite formulas, and returns the sample
// L2 norm with a jackknife standard error.
std::pair<double, double> mc_l2_norm(const std::string& name, std::int64_t n, Hurst h,
                                     std::int64_t replicas, std::uint64_t seed);

// Least-squares slope of log(norm) against log(n).
double order_slope(std::span<const std::int64_t> ns, std::span<const double> norms);

}  // namespace hurstlab

#include "hurstlab/exponent.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hurstlab/errors.hpp"
#include "hurstlab/fbm.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/rng.hpp"

namespace hurstlab {

namespace {

std::string format_half(std::int64_t twice) {
    if (twice % 2 == 0) return std::to_string(twice / 2);
    return std::to_string(twice) + "/2";
}

}  // namespace

std::string AffineInH::pretty() const {
    if (const2 == 0 && hcoef2 == 0) return "0";
    std::string out;
    if (const2 != 0) out = format_half(const2);
    if (hcoef2 != 0) {
        const std::int64_t mag = std::abs(hcoef2);
        std::string hpart = (mag == 2) ? "H" : format_half(mag) + "H";
        if (out.empty())
            out = (hcoef2 < 0 ? "-" : "") + hpart;
        else
            out += (hcoef2 < 0 ? " - " : " + ") + hpart;
    }
    return out;
}

AffineInH affine_in_h(double constant, double h_coefficient) {
    const double c2 = 2.0 * constant;
    const double h2 = 2.0 * h_coefficient;
    if (c2 != std::round(c2) || h2 != std::round(h2))
        throw InvalidArgument("exponents are half-integer affine functions of H");
    return AffineInH{static_cast<std::int64_t>(std::llround(c2)),
                     static_cast<std::int64_t>(std::llround(h2))};
}

std::int32_t WeightedGraph::add_vertex(std::string name) {
    names_.push_back(std::move(name));
    q_.push_back({0, 0});
    return static_cast<std::int32_t>(names_.size() - 1);
}

void WeightedGraph::set_vertex_weight(std::int32_t vertex, std::int32_t slot,
                                      std::int64_t weight) {
    if (vertex < 0 || vertex >= vertex_count())
        throw InvalidArgument("vertex index out of range");
    if (slot != 1 && slot != 2) throw InvalidArgument("slot must be 1 or 2");
    if (weight < 0) throw InvalidArgument("vertex weights are nonnegative");
    q_[static_cast<std::size_t>(vertex)][static_cast<std::size_t>(slot - 1)] = weight;
}

void WeightedGraph::add_edge_weight(SlotRef a, SlotRef b, std::int64_t weight) {
    if (a.vertex < 0 || a.vertex >= vertex_count() || b.vertex < 0 || b.vertex >= vertex_count())
        throw InvalidArgument("edge endpoint out of range");
    if (a.vertex == b.vertex)
        throw InvalidArgument("edges must join distinct vertices (got a slot pair within '" +
                              names_[static_cast<std::size_t>(a.vertex)] + "')");
    if ((a.slot != 1 && a.slot != 2) || (b.slot != 1 && b.slot != 2))
        throw InvalidArgument("slot must be 1 or 2");
    if (weight < 1) throw InvalidArgument("edge weights are positive integers");
    if (b < a) std::swap(a, b);
    theta_[{a, b}] += weight;
}

std::int64_t WeightedGraph::vertex_weight(std::int32_t vertex, std::int32_t slot) const {
    if (vertex < 0 || vertex >= vertex_count())
        throw InvalidArgument("vertex index out of range");
    if (slot != 1 && slot != 2) throw InvalidArgument("slot must be 1 or 2");
    return q_[static_cast<std::size_t>(vertex)][static_cast<std::size_t>(slot - 1)];
}

namespace {

// Union-find over vertex indices.
class DisjointSet {
public:
    explicit DisjointSet(std::int64_t n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    std::int32_t find(std::int32_t v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }
    void unite(std::int32_t a, std::int32_t b) {
        parent_[static_cast<std::size_t>(find(a))] = find(b);
    }
    std::int64_t component_count(std::int64_t n) {
        std::set<std::int32_t> roots;
        for (std::int32_t v = 0; v < n; ++v) roots.insert(find(v));
        return std::ssize(roots);
    }

private:
    std::vector<std::int32_t> parent_;
};

}  // namespace

std::vector<WeightedGraph> components(const WeightedGraph& g) {
    const std::int64_t n = g.vertex_count();
    if (n == 0) throw InvalidArgument("components requires a nonempty vertex set");
    DisjointSet ds(n);
    for (const auto& [key, w] : g.edge_weights())
        if (w > 0) ds.unite(key.first.vertex, key.second.vertex);

    // Components ordered by smallest member index; vertices keep their order.
    std::map<std::int32_t, std::vector<std::int32_t>> groups;
    for (std::int32_t v = 0; v < n; ++v)
        groups[ds.find(static_cast<std::int32_t>(v))].push_back(v);
    std::vector<std::vector<std::int32_t>> ordered;
    for (auto& [root, members] : groups) ordered.push_back(std::move(members));
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    std::vector<WeightedGraph> out;
    for (const auto& members : ordered) {
        WeightedGraph comp;
        std::map<std::int32_t, std::int32_t> remap;
        for (const std::int32_t v : members) {
            const std::int32_t nv = comp.add_vertex(g.vertex_names()[static_cast<std::size_t>(v)]);
            remap[v] = nv;
            comp.set_vertex_weight(nv, 1, g.vertex_weight(v, 1));
            comp.set_vertex_weight(nv, 2, g.vertex_weight(v, 2));
        }
        for (const auto& [key, w] : g.edge_weights()) {
            const auto a = remap.find(key.first.vertex);
            const auto b = remap.find(key.second.vertex);
            if (a != remap.end() && b != remap.end())
                comp.add_edge_weight({a->second, key.first.slot}, {b->second, key.second.slot}, w);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

EdgeClassification classify_edges(const WeightedGraph& g) {
    // Per projected pair, split the weight into the (1,1) part and the rest.
    std::map<std::pair<std::int32_t, std::int32_t>, std::pair<std::int64_t, std::int64_t>> proj;
    for (const auto& [key, w] : g.edge_weights()) {
        auto pair = std::minmax(key.first.vertex, key.second.vertex);
        auto& [w11, w_rest] = proj[{pair.first, pair.second}];
        if (key.first.slot == 1 && key.second.slot == 1)
            w11 += w;
        else
            w_rest += w;
    }
    EdgeClassification out;
    for (const auto& [pair, w] : proj) {
        if (w.second > 0)
            out.e2.push_back(pair);
        else if (w.first > 0)
            out.e1.push_back(pair);
    }
    return out;
}

std::int64_t ell2(const WeightedGraph& connected_component) {
    const std::int64_t n = connected_component.vertex_count();
    if (n == 0) throw InvalidArgument("ell2 requires a nonempty component");
    const EdgeClassification cls = classify_edges(connected_component);
    {
        DisjointSet all(n);
        for (const auto& [a, b] : cls.e1) all.unite(a, b);
        for (const auto& [a, b] : cls.e2) all.unite(a, b);
        if (all.component_count(n) != 1)
            throw InvalidArgument("ell2 is defined for connected components only");
    }
    // A spanning forest of the E2 subgraph has |V| - c(E2) edges, and no
    // spanning tree can hold more independent E2 edges than that.
    DisjointSet e2_only(n);
    for (const auto& [a, b] : cls.e2) e2_only.unite(a, b);
    return n - e2_only.component_count(n);
}

ExponentReport exponent(const WeightedGraph& g) {
    ExponentReport report;
    report.total = AffineInH{0, 0};
    for (const WeightedGraph& comp : components(g)) {
        ComponentReport c;
        c.vertices = comp.vertex_names();
        for (std::int32_t v = 0; v < comp.vertex_count(); ++v) {
            c.q_bar_1 += comp.vertex_weight(v, 1);
            c.q_bar_2 += comp.vertex_weight(v, 2);
        }
        c.q_bar = c.q_bar_1 + c.q_bar_2;
        for (const auto& [key, w] : comp.edge_weights()) c.theta_bar += w;
        const EdgeClassification cls = classify_edges(comp);
        c.e1_edges = std::ssize(cls.e1);
        c.e2_edges = std::ssize(cls.e2);
        c.ell2 = ell2(comp);

        if (c.q_bar == 0)
            c.e_q = AffineInH{0, 0};
        else if (c.q_bar_1 > 0)
            c.e_q = AffineInH{-2, -2 * (c.q_bar - 1)};
        else
            c.e_q = AffineInH{-1, -2 * c.q_bar};
        const std::int64_t excess = comp.vertex_count() - 1 - c.ell2;
        c.e_theta = AffineInH{2 * (1 - excess), -4 * c.theta_bar + 4 * excess};
        c.e = c.e_theta;
        c.e += c.e_q;
        report.total += c.e;
        report.components.push_back(std::move(c));
    }
    return report;
}

namespace {

WeightedGraph single_vertex_graph(std::int64_t q1, std::int64_t q2) {
    WeightedGraph g;
    const std::int32_t v = g.add_vertex("v0");
    g.set_vertex_weight(v, 1, q1);
    g.set_vertex_weight(v, 2, q2);
    return g;
}

std::vector<CatalogEntry> make_catalog() {
    std::vector<CatalogEntry> cat;
    const auto add = [&cat](std::string name, WeightedGraph g, std::int64_t c2,
                            std::int64_t h2) {
        cat.push_back({std::move(name), std::move(g), AffineInH{c2, h2}});
    };

    add("fig1711", single_vertex_graph(0, 2), 1, -4);   // 1/2 - 2H
    add("fig1712", single_vertex_graph(2, 1), 0, -4);   // -2H
    add("fig1713", single_vertex_graph(1, 0), 0, 0);    // 0
    add("fig1714", single_vertex_graph(0, 1), 1, -2);   // 1/2 - H
    add("fig1715", single_vertex_graph(1, 1), 0, -2);   // -H
    add("fig1716", single_vertex_graph(0, 0), 2, 0);    // 1

    {
        WeightedGraph g;
        const auto v0 = g.add_vertex("v0");
        const auto v1 = g.add_vertex("v1");
        g.add_edge_weight({v0, 2}, {v1, 2}, 2);
        add("fig1717", std::move(g), 2, -8);  // 1 - 4H
    }
    {
        WeightedGraph g;
        const auto v0 = g.add_vertex("v0");
        const auto v1 = g.add_vertex("v1");
        g.set_vertex_weight(v0, 2, 1);
        g.set_vertex_weight(v1, 2, 1);
        g.add_edge_weight({v0, 2}, {v1, 2}, 1);
        add("fig1718", std::move(g), 1, -8);  // 1/2 - 4H
    }
    {
        WeightedGraph g;
        const auto v0 = g.add_vertex("v0");
        const auto v1 = g.add_vertex("v1");
        g.set_vertex_weight(v0, 2, 2);
        g.set_vertex_weight(v1, 2, 1);
        add("fig1719", std::move(g), 2, -6);  // 1 - 3H
    }
    {
        WeightedGraph g;
        const auto v1 = g.add_vertex("v1");
        const auto v2 = g.add_vertex("v2");
        const auto v3 = g.add_vertex("v3");
        g.set_vertex_weight(v3, 2, 1);
        g.add_edge_weight({v1, 2}, {v2, 2}, 2);
        add("fig1720", std::move(g), 3, -10);  // 3/2 - 5H
    }
    {
        WeightedGraph g;
        const auto v1 = g.add_vertex("v1");
        const auto v2 = g.add_vertex("v2");
        const auto v3 = g.add_vertex("v3");
        g.set_vertex_weight(v1, 2, 1);
        g.set_vertex_weight(v2, 2, 1);
        g.set_vertex_weight(v3, 2, 1);
        g.add_edge_weight({v1, 2}, {v2, 2}, 1);
        add("fig1721", std::move(g), 2, -10);  // 1 - 5H
    }
    {
        WeightedGraph g;
        const auto v1 = g.add_vertex("v1");
        const auto v2 = g.add_vertex("v2");
        const auto v3 = g.add_vertex("v3");
        g.set_vertex_weight(v1, 2, 1);
        g.set_vertex_weight(v3, 2, 1);
        g.add_edge_weight({v1, 2}, {v2, 2}, 1);
        g.add_edge_weight({v2, 2}, {v3, 2}, 1);
        add("fig1722", std::move(g), 1, -12);  // 1/2 - 6H
    }
    {
        WeightedGraph g;
        const auto v1 = g.add_vertex("v1");
        const auto v2 = g.add_vertex("v2");
        const auto v3 = g.add_vertex("v3");
        g.add_edge_weight({v1, 2}, {v2, 2}, 1);
        g.add_edge_weight({v2, 2}, {v3, 2}, 1);
        g.add_edge_weight({v1, 2}, {v3, 2}, 1);
        add("fig1723", std::move(g), 2, -12);  // 1 - 6H
    }
    {
        WeightedGraph g;
        const auto v0 = g.add_vertex("v0");
        const auto v1 = g.add_vertex("v1");
        g.set_vertex_weight(v0, 2, 1);
        g.add_edge_weight({v0, 2}, {v1, 2}, 1);
        add("fig1724", std::move(g), 1, -6);  // 1/2 - 3H
    }
    return cat;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
    static const std::vector<CatalogEntry> catalog = make_catalog();
    return catalog;
}

// ---------------------------------------------------------------------------
// Exact and Monte Carlo L2 norms of the catalog functionals.
//
// Kernels at scale n, indices j in [1, n-1]:
//   slot 1 -> the indicator of [(j-1)/n, j/n]
//   slot 2 -> the difference of adjacent indicators
// Unit-scale inner-product tables:
//   <ind_a, ind_b> = gamma(a-b) n^-2H
//   <ind_a, dif_b> = nu(a-b) n^-2H   with nu(d) = gamma(d-1) - gamma(d)
//   <dif_a, dif_b> = rho_hat(a-b) n^-2H
// ---------------------------------------------------------------------------

namespace {

struct LagTables {
    std::vector<double> gamma;  // index d + n
    std::vector<double> rho;    // index d + n
    std::int64_t n;
    double scale;  // n^-2H

    LagTables(Hurst h, std::int64_t n_) : n(n_) {
        gamma.resize(static_cast<std::size_t>(2 * n + 3));
        rho.resize(static_cast<std::size_t>(2 * n + 3));
        for (std::int64_t d = -n - 1; d <= n + 1; ++d) {
            gamma[static_cast<std::size_t>(d + n + 1)] = fgn_autocov(h, d);
            rho[static_cast<std::size_t>(d + n + 1)] = rho_hat(h, d);
        }
        scale = std::pow(static_cast<double>(n), -2.0 * h.value());
    }

    double g(std::int64_t d) const { return gamma[static_cast<std::size_t>(d + n + 1)]; }
    double r(std::int64_t d) const { return rho[static_cast<std::size_t>(d + n + 1)]; }
    double nu(std::int64_t d) const { return g(d - 1) - g(d); }
};

void check_supported(const std::string& name) {
    static const std::set<std::string> supported = {
        "fig1711", "fig1712", "fig1713", "fig1714", "fig1717", "fig1718", "fig1719"};
    if (supported.count(name)) return;
    bool known = false;
    for (const auto& entry : builtin_catalog())
        if (entry.name == name) known = true;
    if (!known) throw InvalidArgument("unknown catalog entry '" + name + "'");
    throw InvalidArgument("catalog entry '" + name +
                          "' has no indicator-kernel functional; the numeric order check "
                          "supports fig1711-fig1714 and fig1717-fig1719");
}

// sum over j,k in [1,n-1] of f(j-k), via lag counting.
template <typename F>
double lag_sum(std::int64_t n, F&& f) {
    double total = 0.0;
    for (std::int64_t d = -(n - 2); d <= n - 2; ++d)
        total += static_cast<double>(n - 1 - std::llabs(d)) * f(d);
    return total;
}

double exact_second_moment(const std::string& name, std::int64_t n, Hurst h) {
    const LagTables t(h, n);
    const double s2 = t.scale * t.scale;  // n^-4H

    if (name == "fig1711") {
        // sum_j I2(dif_j (x) dif_j): permanent gives 2 <dif_j, dif_k>^2.
        return 2.0 * s2 * lag_sum(n, [&](std::int64_t d) { return t.r(d) * t.r(d); });
    }
    if (name == "fig1712") {
        // sum_j I3(ind_j (x) ind_j (x) dif_j): permanent 2 a^2 d + 4 a b c.
        const double s3 = s2 * t.scale;
        return s3 * lag_sum(n, [&](std::int64_t d) {
                   const double a = t.g(d);
                   const double b = t.nu(d);
                   const double c = t.nu(-d);
                   return 2.0 * a * a * t.r(d) + 4.0 * a * b * c;
               });
    }
    if (name == "fig1713")
        return t.scale * lag_sum(n, [&](std::int64_t d) { return t.g(d); });
    if (name == "fig1714")
        return t.scale * lag_sum(n, [&](std::int64_t d) { return t.r(d); });
    if (name == "fig1717") {
        // Deterministic: I_n = sum <dif_j1, dif_j2>^2; second moment is I_n^2.
        const double v = s2 * lag_sum(n, [&](std::int64_t d) { return t.r(d) * t.r(d); });
        return v * v;
    }
    if (name == "fig1718") {
        // sum_{j1,j2} <dif_j1,dif_j2> I2(dif_j1 (x) dif_j2); collapsing the
        // permanent over the four indices gives 2 Tr(R^4).
        const std::int64_t m = n - 1;
        Eigen::MatrixXd r_mat(m, m);
        for (std::int64_t a = 0; a < m; ++a)
            for (std::int64_t b = 0; b < m; ++b) r_mat(a, b) = t.scale * t.r(a - b);
        const Eigen::MatrixXd r2 = r_mat * r_mat;
        return 2.0 * r2.squaredNorm();
    }
    if (name == "fig1719") {
        // Product of components I2(dif_j1 (x) dif_j1) I1(dif_j2) expands into
        // chaoses of order 3 and 1; the orders are orthogonal and each second
        // moment reduces to row sums of R.
        const std::int64_t m = n - 1;
        std::vector<double> rowsum(static_cast<std::size_t>(m), 0.0);
        for (std::int64_t a = 0; a < m; ++a) {
            double s = 0.0;
            for (std::int64_t b = 0; b < m; ++b) s += t.r(a - b);
            rowsum[static_cast<std::size_t>(a)] = t.scale * s;
        }
        const double frob2 = s2 * lag_sum(n, [&](std::int64_t d) { return t.r(d) * t.r(d); });
        const double total_r = t.scale * lag_sum(n, [&](std::int64_t d) { return t.r(d); });
        // order-3 part: 2 ||R||_F^2 * sum(R) + 4 sum_{a,b} R[a,b] rowsum(a) rowsum(b)
        double cross = 0.0;
        for (std::int64_t a = 0; a < m; ++a)
            for (std::int64_t b = 0; b < m; ++b)
                cross += t.scale * t.r(a - b) * rowsum[static_cast<std::size_t>(a)] *
                         rowsum[static_cast<std::size_t>(b)];
        const double order3 = 2.0 * frob2 * total_r + 4.0 * cross;
        // order-1 part: B = 2 sum_a rowsum(a) I1(dif_a), so E[B^2] = 4 cross.
        const double order1 = 4.0 * cross;
        return order3 + order1;
    }
    throw InvalidArgument("unsupported catalog entry '" + name + "'");
}

}  // namespace

double exact_l2_norm(const std::string& name, std::int64_t n, Hurst h) {
    check_supported(name);
    if (n < 2) throw InvalidArgument("exact_l2_norm requires n >= 2");
    return std::sqrt(exact_second_moment(name, n, h));
}

namespace {

// One replica of the catalog functional from an fGn sample (increments at
// scale n). B(ind_j) = inc[j-1]; B(dif_j) = inc[j] - inc[j-1].
double evaluate_replica(const std::string& name, std::int64_t n, const LagTables& t,
                        std::span<const double> inc) {
    const std::int64_t m = n - 1;
    const auto b_ind = [&](std::int64_t j) { return inc[static_cast<std::size_t>(j - 1)]; };
    const auto b_dif = [&](std::int64_t j) {
        return inc[static_cast<std::size_t>(j)] - inc[static_cast<std::size_t>(j - 1)];
    };

    if (name == "fig1711") {
        const double var = t.scale * t.r(0);
        double s = 0.0;
        for (std::int64_t j = 1; j <= m; ++j) {
            const double b = b_dif(j);
            s += b * b - var;
        }
        return s;
    }
    if (name == "fig1712") {
        double s = 0.0;
        const double var_ind = t.scale * t.g(0);
        const double cross = t.scale * t.nu(0);
        for (std::int64_t j = 1; j <= m; ++j) {
            const double bi = b_ind(j);
            const double bd = b_dif(j);
            s += bi * bi * bd - var_ind * bd - 2.0 * cross * bi;
        }
        return s;
    }
    if (name == "fig1713") {
        double s = 0.0;
        for (std::int64_t j = 1; j <= m; ++j) s += b_ind(j);
        return s;
    }
    if (name == "fig1714") {
        double s = 0.0;
        for (std::int64_t j = 1; j <= m; ++j) s += b_dif(j);
        return s;
    }
    if (name == "fig1717") {
        const double s2 = t.scale * t.scale;
        return s2 * lag_sum(n, [&](std::int64_t d) { return t.r(d) * t.r(d); });
    }
    if (name == "fig1718") {
        double s = 0.0;
        for (std::int64_t j1 = 1; j1 <= m; ++j1) {
            const double b1 = b_dif(j1);
            for (std::int64_t j2 = 1; j2 <= m; ++j2) {
                const double w = t.scale * t.r(j1 - j2);
                s += w * (b1 * b_dif(j2) - w);
            }
        }
        return s;
    }
    if (name == "fig1719") {
        const double var = t.scale * t.r(0);
        double chaos2 = 0.0, chaos1 = 0.0;
        for (std::int64_t j = 1; j <= m; ++j) {
            const double b = b_dif(j);
            chaos2 += b * b - var;
            chaos1 += b;
        }
        return chaos2 * chaos1;
    }
    throw InvalidArgument("unsupported catalog entry '" + name + "'");
}

}  // namespace

std::pair<double, double> mc_l2_norm(const std::string& name, std::int64_t n, Hurst h,
                                     std::int64_t replicas, std::uint64_t seed) {
    check_supported(name);
    if (n < 2) throw InvalidArgument("mc_l2_norm requires n >= 2");
    if (replicas < 2) throw InvalidArgument("mc_l2_norm requires at least 2 replicas");
    const LagTables t(h, n);
    const FgnSampler sampler(h, n, FgnMethod::circulant);

    std::vector<double> squares(static_cast<std::size_t>(replicas));
    std::vector<double> inc(static_cast<std::size_t>(n));
    for (std::int64_t r = 0; r < replicas; ++r) {
        RngStream rng = derive_stream(seed, "ordercheck", static_cast<std::uint64_t>(r));
        sampler.sample(rng, inc);
        const double v = evaluate_replica(name, n, t, inc);
        squares[static_cast<std::size_t>(r)] = v * v;
    }

    const double mean_sq =
        std::accumulate(squares.begin(), squares.end(), 0.0) / static_cast<double>(replicas);
    const double estimate = std::sqrt(mean_sq);

    // Jackknife over replicas for the standard error of sqrt(mean of squares).
    const double total = mean_sq * static_cast<double>(replicas);
    std::vector<double> loo(static_cast<std::size_t>(replicas));
    double loo_mean = 0.0;
    for (std::int64_t r = 0; r < replicas; ++r) {
        const double v =
            std::sqrt(std::max(0.0, (total - squares[static_cast<std::size_t>(r)]) /
                                        static_cast<double>(replicas - 1)));
        loo[static_cast<std::size_t>(r)] = v;
        loo_mean += v;
    }
    loo_mean /= static_cast<double>(replicas);
    double var = 0.0;
    for (const double v : loo) var += (v - loo_mean) * (v - loo_mean);
    var *= static_cast<double>(replicas - 1) / static_cast<double>(replicas);
    return {estimate, std::sqrt(var)};
}

double order_slope(std::span<const std::int64_t> ns, std::span<const double> norms) {
    if (ns.size() != norms.size() || ns.size() < 3)
        throw InvalidArgument("order_slope needs at least 3 (n, norm) pairs");
    for (const double v : norms)
        if (!(v > 0.0)) throw InvalidArgument("order_slope requires positive norms");
    const std::size_t k = ns.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double x = std::log(static_cast<double>(ns[i]));
        const double y = std::log(norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(k);
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace hurstlab

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "hurstlab/errors.hpp"
#include "hurstlab/exponent.hpp"
#include "hurstlab/fbm.hpp"
#include "hurstlab/graph_io.hpp"
#include "hurstlab/interval_calculus.hpp"
#include "hurstlab/rng.hpp"

using namespace hurstlab;

namespace {

// Brute-force ell2: enumerate all |V|-1 subsets of E(C), keep spanning trees,
// maximize the number of E2 members. Test oracle only.
std::int64_t ell2_brute_force(const WeightedGraph& comp) {
    const std::int64_t n = comp.vertex_count();
    if (n == 1) return 0;
    const EdgeClassification cls = classify_edges(comp);
    std::vector<std::pair<std::int32_t, std::int32_t>> edges = cls.e1;
    const std::size_t e1_count = edges.size();
    edges.insert(edges.end(), cls.e2.begin(), cls.e2.end());

    const std::size_t need = static_cast<std::size_t>(n - 1);
    std::vector<std::size_t> pick(need);
    std::int64_t best = -1;

    const auto is_tree = [&](const std::vector<std::size_t>& chosen) {
        std::vector<std::int32_t> parent(static_cast<std::size_t>(n));
        for (std::int32_t v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
        const auto find = [&](std::int32_t v) {
            while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
            return v;
        };
        for (const std::size_t e : chosen) {
            const auto [a, b] = edges[e];
            const std::int32_t ra = find(a), rb = find(b);
            if (ra == rb) return false;  // cycle
            parent[static_cast<std::size_t>(ra)] = rb;
        }
        return true;  // n-1 acyclic edges on n vertices span
    };

    // enumerate subsets of size n-1
    std::vector<std::size_t> idx(edges.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<bool> mask(edges.size(), false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(std::min(need, mask.size())),
              true);
    if (need > edges.size()) return -1;
    std::sort(mask.begin(), mask.end());  // all false... ensure proper init below
    std::fill(mask.begin(), mask.end(), false);
    std::fill(mask.end() - static_cast<std::ptrdiff_t>(need), mask.end(), true);
    do {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i]) chosen.push_back(i);
        if (!is_tree(chosen)) continue;
        std::int64_t e2_in_tree = 0;
        for (const std::size_t e : chosen)
            if (e >= e1_count) ++e2_in_tree;
        best = std::max(best, e2_in_tree);
    } while (std::next_permutation(mask.begin(), mask.end()));
    return best;
}

WeightedGraph random_connected_graph(RngStream& rng) {
    WeightedGraph g;
    const std::int32_t n = 1 + static_cast<std::int32_t>(rng.next_u64() % 5);
    for (std::int32_t v = 0; v < n; ++v) g.add_vertex("v" + std::to_string(v));
    for (std::int32_t v = 0; v < n; ++v)
        for (std::int32_t slot = 1; slot <= 2; ++slot)
            if (rng.next_u64() % 3 == 0)
                g.set_vertex_weight(v, slot, static_cast<std::int64_t>(rng.next_u64() % 3));
    // random spanning path keeps it connected
    for (std::int32_t v = 0; v + 1 < n; ++v)
        g.add_edge_weight({v, static_cast<std::int32_t>(1 + rng.next_u64() % 2)},
                          {v + 1, static_cast<std::int32_t>(1 + rng.next_u64() % 2)},
                          1 + static_cast<std::int64_t>(rng.next_u64() % 2));
    // up to 8 extra projected edges
    const int extra = static_cast<int>(rng.next_u64() % 9);
    for (int e = 0; e < extra && n > 1; ++e) {
        const std::int32_t a = static_cast<std::int32_t>(rng.next_u64() % n);
        std::int32_t b = static_cast<std::int32_t>(rng.next_u64() % n);
        if (a == b) b = (b + 1) % n;
        g.add_edge_weight({a, static_cast<std::int32_t>(1 + rng.next_u64() % 2)},
                          {b, static_cast<std::int32_t>(1 + rng.next_u64() % 2)},
                          1 + static_cast<std::int64_t>(rng.next_u64() % 3));
    }
    return g;
}

}  // namespace

TEST_CASE("affine pretty printing") {
    CHECK(AffineInH{1, -4}.pretty() == "1/2 - 2H");
    CHECK(AffineInH{2, -12}.pretty() == "1 - 6H");
    CHECK(AffineInH{0, 0}.pretty() == "0");
    CHECK(AffineInH{2, 0}.pretty() == "1");
    CHECK(AffineInH{0, -2}.pretty() == "-H");
    CHECK(AffineInH{3, -10}.pretty() == "3/2 - 5H");
    CHECK(AffineInH{0, -4}.pretty() == "-2H");
    CHECK(AffineInH{1, -4}.at(0.75) == doctest::Approx(-1.0));
}

TEST_CASE("components") {
    WeightedGraph g;
    const auto v0 = g.add_vertex("a");
    const auto v1 = g.add_vertex("b");
    g.add_vertex("c");
    g.add_edge_weight({v0, 1}, {v1, 2}, 1);
    const auto comps = components(g);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertex_count() == 2);
    CHECK(comps[1].vertex_count() == 1);
    CHECK(comps[1].vertex_names()[0] == "c");

    WeightedGraph single;
    single.add_vertex("only");
    CHECK(components(single).size() == 1);
}

TEST_CASE("edge classification") {
    WeightedGraph g;
    const auto v0 = g.add_vertex("v0");
    const auto v1 = g.add_vertex("v1");
    const auto v2 = g.add_vertex("v2");
    g.add_edge_weight({v0, 1}, {v1, 1}, 2);  // (1,1) only -> E1
    g.add_edge_weight({v1, 2}, {v2, 2}, 1);  // (2,2) -> E2
    auto cls = classify_edges(g);
    REQUIRE(cls.e1.size() == 1);
    REQUIRE(cls.e2.size() == 1);
    CHECK(cls.e1[0] == std::pair<std::int32_t, std::int32_t>{0, 1});
    CHECK(cls.e2[0] == std::pair<std::int32_t, std::int32_t>{1, 2});

    // weight on both (1,1) and (1,2) for one pair: the E2 content wins
    WeightedGraph mixed;
    const auto a = mixed.add_vertex("a");
    const auto b = mixed.add_vertex("b");
    mixed.add_edge_weight({a, 1}, {b, 1}, 1);
    mixed.add_edge_weight({a, 1}, {b, 2}, 1);
    cls = classify_edges(mixed);
    CHECK(cls.e1.empty());
    CHECK(cls.e2.size() == 1);
}

TEST_CASE("ell2 examples") {
    {
        WeightedGraph g;
        const auto a = g.add_vertex("a");
        const auto b = g.add_vertex("b");
        g.add_edge_weight({a, 2}, {b, 2}, 1);
        CHECK(ell2(g) == 1);
    }
    {
        WeightedGraph g;  // triangle, all E2
        const auto a = g.add_vertex("a");
        const auto b = g.add_vertex("b");
        const auto c = g.add_vertex("c");
        g.add_edge_weight({a, 2}, {b, 2}, 1);
        g.add_edge_weight({b, 2}, {c, 2}, 1);
        g.add_edge_weight({a, 2}, {c, 2}, 1);
        CHECK(ell2(g) == 2);
    }
    {
        WeightedGraph g;  // E1 only
        const auto a = g.add_vertex("a");
        const auto b = g.add_vertex("b");
        g.add_edge_weight({a, 1}, {b, 1}, 1);
        CHECK(ell2(g) == 0);
    }
    {
        WeightedGraph g;  // disconnected
        g.add_vertex("a");
        g.add_vertex("b");
        CHECK_THROWS_AS(ell2(g), InvalidArgument);
    }
}

TEST_CASE("ell2 equals brute-force spanning-tree maximization on random graphs") {
    RngStream rng(20240601);
    int checked = 0;
    while (checked < 200) {
        const WeightedGraph g = random_connected_graph(rng);
        for (const WeightedGraph& comp : components(g)) {
            const std::int64_t brute = ell2_brute_force(comp);
            REQUIRE(brute >= 0);
            CHECK(ell2(comp) == brute);
        }
        ++checked;
    }
}

TEST_CASE("exponent examples from the catalog graphs") {
    {
        WeightedGraph g;
        const auto v = g.add_vertex("v");
        g.set_vertex_weight(v, 2, 2);
        CHECK(exponent(g).total == AffineInH{1, -4});  // 1/2 - 2H
    }
    {
        WeightedGraph g;
        const auto v = g.add_vertex("v");
        g.set_vertex_weight(v, 1, 1);
        CHECK(exponent(g).total == AffineInH{0, 0});
    }
    {
        WeightedGraph g;
        const auto a = g.add_vertex("a");
        const auto b = g.add_vertex("b");
        g.add_edge_weight({a, 2}, {b, 2}, 2);
        CHECK(exponent(g).total == AffineInH{2, -8});  // 1 - 4H
    }
}

TEST_CASE("all 14 catalog exponents are reproduced exactly") {
    const auto& catalog = builtin_catalog();
    REQUIRE(catalog.size() == 14);
    for (const auto& entry : catalog) {
        const ExponentReport report = exponent(entry.graph);
        CHECK_MESSAGE(report.total == entry.expected,
                      entry.name, ": got ", report.total.pretty(), " expected ",
                      entry.expected.pretty());
    }
}

TEST_CASE("exponent is additive over disjoint unions") {
    const auto& catalog = builtin_catalog();
    RngStream rng(515);
    for (int trial = 0; trial < 20; ++trial) {
        const auto& ga = catalog[rng.next_u64() % catalog.size()];
        const auto& gb = catalog[rng.next_u64() % catalog.size()];
        WeightedGraph joined;
        std::vector<std::int32_t> map_a, map_b;
        for (const auto& name : ga.graph.vertex_names())
            map_a.push_back(joined.add_vertex("a_" + name));
        for (const auto& name : gb.graph.vertex_names())
            map_b.push_back(joined.add_vertex("b_" + name));
        for (std::int32_t v = 0; v < ga.graph.vertex_count(); ++v)
            for (std::int32_t s = 1; s <= 2; ++s)
                joined.set_vertex_weight(map_a[static_cast<std::size_t>(v)], s,
                                         ga.graph.vertex_weight(v, s));
        for (std::int32_t v = 0; v < gb.graph.vertex_count(); ++v)
            for (std::int32_t s = 1; s <= 2; ++s)
                joined.set_vertex_weight(map_b[static_cast<std::size_t>(v)], s,
                                         gb.graph.vertex_weight(v, s));
        for (const auto& [key, w] : ga.graph.edge_weights())
            joined.add_edge_weight(
                {map_a[static_cast<std::size_t>(key.first.vertex)], key.first.slot},
                {map_a[static_cast<std::size_t>(key.second.vertex)], key.second.slot}, w);
        for (const auto& [key, w] : gb.graph.edge_weights())
            joined.add_edge_weight(
                {map_b[static_cast<std::size_t>(key.first.vertex)], key.first.slot},
                {map_b[static_cast<std::size_t>(key.second.vertex)], key.second.slot}, w);
        AffineInH sum = exponent(ga.graph).total;
        sum += exponent(gb.graph).total;
        CHECK(exponent(joined).total == sum);
    }
}

TEST_CASE("e_q bounds hold on random weighted graphs") {
    RngStream rng(606);
    for (int trial = 0; trial < 100; ++trial) {
        const WeightedGraph g = random_connected_graph(rng);
        for (const auto& comp : exponent(g).components) {
            for (const double h : {0.51, 0.75, 0.99}) {
                CHECK(comp.e_q.at(h) <= -h * static_cast<double>(comp.q_bar) + 1e-12);
                if (comp.q_bar > 0) {
                    CHECK(comp.e_q.at(h) >= -0.5 - h * static_cast<double>(comp.q_bar) - 1e-12);
                    CHECK(comp.e_q.at(h) <=
                          -1.0 - h * static_cast<double>(comp.q_bar - 1) + 1e-12);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Numeric order checks
// ---------------------------------------------------------------------------

namespace {

// Independent oracle for the chaos second moments: kernels written out as
// signed interval combinations, Gram entries through interval_inner only,
// permanents as explicit sums over permutations.
struct BruteKernel {
    // list of (weight, a, b) meaning weight * indicator of [a, b]
    std::vector<std::tuple<double, double, double>> parts;
};

BruteKernel brute_ind(std::int64_t n, std::int64_t j) {
    const double a = static_cast<double>(j - 1) / static_cast<double>(n);
    const double b = static_cast<double>(j) / static_cast<double>(n);
    return {{{1.0, a, b}}};
}

BruteKernel brute_dif(std::int64_t n, std::int64_t j) {
    const double lo = static_cast<double>(j - 1) / static_cast<double>(n);
    const double mid = static_cast<double>(j) / static_cast<double>(n);
    const double hi = static_cast<double>(j + 1) / static_cast<double>(n);
    return {{{1.0, mid, hi}, {-1.0, lo, mid}}};
}

double brute_inner(Hurst h, const BruteKernel& f, const BruteKernel& g) {
    double acc = 0.0;
    for (const auto& [wf, a, b] : f.parts)
        for (const auto& [wg, c, d] : g.parts) acc += wf * wg * interval_inner(h, a, b, c, d);
    return acc;
}

double brute_permanent(Hurst h, const std::vector<BruteKernel>& rows,
                       const std::vector<BruteKernel>& cols) {
    std::vector<std::size_t> idx(rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    double acc = 0.0;
    do {
        double term = 1.0;
        for (std::size_t i = 0; i < rows.size(); ++i)
            term *= brute_inner(h, rows[i], cols[idx[i]]);
        acc += term;
    } while (std::next_permutation(idx.begin(), idx.end()));
    return acc;
}

// E[I_n^2] for the single-sum entries, built with no shared code paths.
double brute_second_moment(const std::string& name, std::int64_t n, Hurst h) {
    const auto kernels = [&](std::int64_t j) -> std::vector<BruteKernel> {
        if (name == "fig1711") return {brute_dif(n, j), brute_dif(n, j)};
        if (name == "fig1712") return {brute_ind(n, j), brute_ind(n, j), brute_dif(n, j)};
        if (name == "fig1713") return {brute_ind(n, j)};
        return {brute_dif(n, j)};  // fig1714
    };
    if (name == "fig1717" || name == "fig1718") {
        double acc = 0.0;
        for (std::int64_t j1 = 1; j1 < n; ++j1)
            for (std::int64_t j2 = 1; j2 < n; ++j2) {
                const double bj = brute_inner(h, brute_dif(n, j1), brute_dif(n, j2));
                if (name == "fig1717") {
                    acc += bj * bj;  // deterministic functional; square at the end
                    continue;
                }
                for (std::int64_t k1 = 1; k1 < n; ++k1)
                    for (std::int64_t k2 = 1; k2 < n; ++k2) {
                        const double bk = brute_inner(h, brute_dif(n, k1), brute_dif(n, k2));
                        acc += bj * bk *
                               brute_permanent(h, {brute_dif(n, j1), brute_dif(n, j2)},
                                               {brute_dif(n, k1), brute_dif(n, k2)});
                    }
            }
        return name == "fig1717" ? acc * acc : acc;
    }
    double acc = 0.0;
    for (std::int64_t j = 1; j < n; ++j)
        for (std::int64_t k = 1; k < n; ++k)
            acc += brute_permanent(h, kernels(j), kernels(k));
    return acc;
}

}  // namespace

TEST_CASE("exact_l2_norm agrees with the interval-expansion brute force") {
    for (const double h : {0.5, 0.62, 0.85}) {
        for (const char* name :
             {"fig1711", "fig1712", "fig1713", "fig1714", "fig1717", "fig1718"}) {
            const double brute = brute_second_moment(name, 8, Hurst(h));
            const double fast = exact_l2_norm(name, 8, Hurst(h));
            CHECK_MESSAGE(fast == doctest::Approx(std::sqrt(brute)).epsilon(1e-10),
                          name, " at h=", h);
        }
    }
}

TEST_CASE("exact_l2_norm hand value in the Brownian limit") {
    // fig1711 at n = 4: rho_hat = (-1, 2, -1) gives
    // E = 2 * 4^-2 * sum_{j,k in [3]} rho(j-k)^2 = (2/16)(3*4 + 4*1) = 2.
    CHECK(exact_l2_norm("fig1711", 4, Hurst(0.5)) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("exact_l2_norm cross-check against c_hat for large n") {
    const double h = 0.6;
    const std::int64_t n = 4096;
    const double norm = exact_l2_norm("fig1711", n, Hurst(h));
    const HurstConstants c = series_constants(Hurst(h), 1e-10);
    const double predicted =
        std::sqrt(2.0 * c.c_hat * static_cast<double>(n - 1)) *
        std::pow(static_cast<double>(n), -2.0 * h);
    CHECK(norm == doctest::Approx(predicted).epsilon(5e-3));
}

TEST_CASE("exact_l2_norm positivity and input validation") {
    for (const char* name :
         {"fig1711", "fig1712", "fig1713", "fig1714", "fig1717", "fig1718", "fig1719"})
        CHECK(exact_l2_norm(name, 32, Hurst(0.7)) > 0.0);
    CHECK_THROWS_AS(exact_l2_norm("fig1723", 32, Hurst(0.7)), InvalidArgument);
    CHECK_THROWS_AS(exact_l2_norm("nonsense", 32, Hurst(0.7)), InvalidArgument);
    CHECK_THROWS_AS(mc_l2_norm("fig1711", 32, Hurst(0.7), 0, 1), InvalidArgument);
}

TEST_CASE("mc_l2_norm agrees with the exact oracle on every supported entry") {
    const double h = 0.62;
    const std::int64_t n = 48;
    for (const char* name :
         {"fig1711", "fig1712", "fig1713", "fig1714", "fig1718", "fig1719"}) {
        const double exact = exact_l2_norm(name, n, Hurst(h));
        const auto [mc, se] = mc_l2_norm(name, n, Hurst(h), 3000, 424242);
        CHECK_MESSAGE(std::abs(mc - exact) < 4.0 * se, name, ": mc=", mc, " exact=", exact,
                      " se=", se);
    }
    // the deterministic entry reproduces itself with zero spread
    const auto [mc, se] = mc_l2_norm("fig1717", n, Hurst(h), 10, 1);
    CHECK(mc == doctest::Approx(exact_l2_norm("fig1717", n, Hurst(h))).epsilon(1e-12));
    CHECK(se == 0.0);
}

TEST_CASE("first-chaos sums are centered") {
    // fig1713's functional telescopes to B_{(n-1)/n}; its Monte Carlo mean
    // over replicas must vanish.
    const std::int64_t n = 64;
    const FgnSampler sampler(Hurst(0.7), n, FgnMethod::circulant);
    std::vector<double> inc(static_cast<std::size_t>(n));
    const int reps = 4000;
    double acc = 0.0, accsq = 0.0;
    for (int r = 0; r < reps; ++r) {
        RngStream rng = derive_stream(88, "centered", static_cast<std::uint64_t>(r));
        sampler.sample(rng, inc);
        double b = 0.0;
        for (std::int64_t j = 0; j < n - 1; ++j) b += inc[static_cast<std::size_t>(j)];
        acc += b;
        accsq += b * b;
    }
    const double mean = acc / reps;
    const double se = std::sqrt((accsq / reps - mean * mean) / reps);
    CHECK(std::abs(mean) < 3.0 * se);
}

TEST_CASE("order_slope") {
    const std::vector<std::int64_t> ns{16, 32, 64, 128};
    std::vector<double> norms;
    for (const auto n : ns) norms.push_back(std::pow(static_cast<double>(n), -0.5));
    CHECK(order_slope(ns, norms) == doctest::Approx(-0.5).epsilon(1e-12));

    const std::vector<double> constant{2.0, 2.0, 2.0, 2.0};
    CHECK(order_slope(ns, constant) == doctest::Approx(0.0).epsilon(1e-12));

    const std::vector<double> bad{1.0, -1.0, 1.0, 1.0};
    CHECK_THROWS_AS(order_slope(ns, bad), InvalidArgument);
    CHECK_THROWS_AS(order_slope(std::vector<std::int64_t>{1, 2}, std::vector<double>{1, 2}),
                    InvalidArgument);
}

TEST_CASE("exact slopes match the catalog exponents") {
    // unit weights attain the exponent bound for these entries
    const std::vector<std::int64_t> ns{64, 128, 256, 512, 1024};
    for (const char* name : {"fig1711", "fig1717", "fig1718"}) {
        AffineInH expected{};
        for (const auto& entry : builtin_catalog())
            if (entry.name == name) expected = entry.expected;
        for (const double h : {0.55, 0.75, 0.9}) {
            std::vector<double> norms;
            for (const auto n : ns) norms.push_back(exact_l2_norm(name, n, Hurst(h)));
            const double slope = order_slope(ns, norms);
            CHECK_MESSAGE(std::abs(slope - expected.at(h)) < 0.02, name, " at h=", h,
                          ": slope ", slope, " vs ", expected.at(h));
        }
    }
}

TEST_CASE("graph JSON round trip and validation") {
    const std::string text = R"({"vertices":["v0","v1"],
        "q":[{"v":"v0","slot":2,"w":2}],
        "theta":[{"u":"v0","uslot":2,"v":"v1","vslot":2,"w":2}]})";
    const WeightedGraph g = graph_from_json(text);
    CHECK(g.vertex_count() == 2);
    CHECK(g.vertex_weight(0, 2) == 2);
    // one component: e_q = -1/2 - 2H plus e_theta = 1 - 4H
    CHECK(exponent(g).total == AffineInH{1, -12});

    const WeightedGraph round = graph_from_json(graph_to_json(g));
    CHECK(exponent(round).total == exponent(g).total);

    CHECK_THROWS_AS(graph_from_json("{"), InvalidArgument);
    CHECK_THROWS_AS(graph_from_json(R"({"vertices":["a"],"theta":[
        {"u":"a","uslot":1,"v":"a","vslot":2,"w":1}]})"),
                    InvalidArgument);
    CHECK_THROWS_AS(graph_from_json(R"({"vertices":["a"],"q":[
        {"v":"zzz","slot":1,"w":1}]})"),
                    InvalidArgument);
}

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphs.hpp"
#include "oracles.hpp"
#include "soc_cascade/rng.hpp"
#include "soc_cascade/synth.hpp"
#include "soc_cascade/topology.hpp"

using namespace soc_cascade;
using testing::make_graph;

namespace {

constexpr double kTol = 1e-6;

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol = kTol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

bool close_all(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

Partition by_labels(std::vector<std::uint32_t> labels) { return Partition::from_labels(labels); }

SupplyNetwork with_edge(const SupplyNetwork& net, FirmId u, FirmId v) {
  auto edges = net.edges();
  edges.emplace_back(u, v);
  std::vector<double> caps;
  for (const Firm& f : net.firms()) caps.push_back(f.registered_capital);
  return make_graph(net.size(), edges, caps);
}

SupplyNetwork ba_with_capital(std::size_t n, std::uint64_t seed) {
  return generate({BarabasiAlbertModel{n, 2}, CapitalModel::pareto(2.0, 50.0), seed});
}

}  // namespace

TEST_CASE("path_stats examples") {
  auto s = path_stats(testing::complete_graph(3));
  CHECK(s.average_path_length == 1.0);
  CHECK(s.diameter == 1);
  s = path_stats(testing::path_graph(3));
  CHECK(s.average_path_length == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(s.diameter == 2);
  s = path_stats(testing::star_graph(4));
  CHECK(s.average_path_length == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(s.diameter == 2);
}

TEST_CASE("path_stats and closeness reject disconnected input") {
  const auto net = testing::two_triangles(false);
  CHECK_THROWS_AS(path_stats(net), std::invalid_argument);
  CHECK_THROWS_AS(closeness(net), std::invalid_argument);
}

TEST_CASE("local_clustering examples") {
  auto c = local_clustering(testing::complete_graph(3));
  CHECK(c[0].clustering == 1.0);
  CHECK(c[0].triangles == 1);
  c = local_clustering(testing::star_graph(4));
  CHECK(c[0].clustering == 0.0);
  CHECK(c[0].triangles == 0);
  // K4 without edge 2-3: firms 0 and 1 keep full degree.
  c = local_clustering(make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}));
  CHECK(c[0].clustering == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(c[0].triangles == 2);
}

TEST_CASE("betweenness examples") {
  CHECK(betweenness(testing::path_graph(3)) == std::vector<double>{0.0, 1.0, 0.0});
  CHECK(betweenness(testing::complete_graph(3)) == std::vector<double>{0.0, 0.0, 0.0});
  const auto star = betweenness(testing::star_graph(4));
  CHECK(star[0] == 6.0);
  // Tied shortest paths share credit: in C4 each firm sits on half of one pair.
  CHECK(betweenness(testing::cycle_graph(4)) == std::vector<double>{0.5, 0.5, 0.5, 0.5});
}

TEST_CASE("closeness examples") {
  const auto p = closeness(testing::path_graph(3));
  CHECK(p[1] == 1.0);
  CHECK(p[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (double x : closeness(testing::complete_graph(4))) CHECK(x == 1.0);
}

TEST_CASE("eigenvector examples") {
  for (double x : eigenvector_centrality(testing::cycle_graph(5))) {
    CHECK(x == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-9));
  }
  const auto star = eigenvector_centrality(testing::star_graph(4));
  for (std::size_t i = 1; i < star.size(); ++i) CHECK(star[0] > star[i]);
  check_close(star, testing::oracle::eigenvector(testing::star_graph(4)), 1e-9);
  for (double x : eigenvector_centrality(testing::path_graph(2))) {
    CHECK(x == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("eigenvector reports the iteration cap") {
  EigenvectorOptions opts;
  opts.tolerance = 0.0;
  opts.max_iterations = 7;
  try {
    (void)eigenvector_centrality(testing::path_graph(5), opts);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 7);
  }
}

TEST_CASE("pagerank examples") {
  for (double x : pagerank(testing::cycle_graph(4))) CHECK(x == doctest::Approx(0.25).epsilon(1e-12));
  const auto p = pagerank(testing::path_graph(3));
  CHECK(p[0] == doctest::Approx(p[2]).epsilon(1e-12));
  CHECK(p[0] < p[1]);
  const auto star = testing::star_graph(4);
  const auto s = pagerank(star);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[0] > s[i]);
  check_close(s, testing::oracle::pagerank(star), 1e-9);
}

TEST_CASE("pagerank gives isolated firms teleport mass and sums to one") {
  const auto net = make_graph(4, {{0, 1}, {1, 2}});
  const auto p = pagerank(net);
  check_close(p, testing::oracle::pagerank(net), 1e-9);
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("modularity examples") {
  const auto disjoint = testing::two_triangles(false);
  CHECK(modularity(disjoint, by_labels({0, 0, 0, 1, 1, 1})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(modularity(disjoint, by_labels({0, 0, 0, 0, 0, 0})) == doctest::Approx(0.0).scale(1));
  CHECK(modularity(testing::complete_graph(3), by_labels({0, 1, 2})) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(modularity(testing::two_triangles(true), by_labels({0, 0, 0, 1, 1, 1})) ==
        doctest::Approx(5.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("modularity rejects edgeless graphs and short partitions") {
  CHECK_THROWS_AS(modularity(make_graph(3, {}), by_labels({0, 1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(modularity(testing::path_graph(3), by_labels({0, 1})), std::invalid_argument);
}

TEST_CASE("louvain examples") {
  const auto bridged = testing::two_triangles(true);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = louvain(bridged, seed);
    CHECK(p.count == 2);
    CHECK(modularity(bridged, p) >= 5.0 / 14.0 - 1e-12);
    CHECK(p.community[0] == p.community[1]);
    CHECK(p.community[1] == p.community[2]);
    CHECK(p.community[3] == p.community[4]);
    CHECK(p.community[4] == p.community[5]);
  }
  CHECK(louvain(testing::complete_graph(5), 3).count == 1);
  const auto disjoint = testing::two_triangles(false);
  const auto p = louvain(disjoint, 9);
  CHECK(p.count == 2);
  CHECK(modularity(disjoint, p) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("louvain is deterministic per seed and returns dense ids") {
  Rng rng(41);
  const auto net = testing::random_graph(60, 0.08, rng);
  const auto a = louvain(net, 5);
  const auto b = louvain(net, 5);
  CHECK(a.community == b.community);
  std::vector<bool> used(a.count, false);
  for (auto c : a.community) {
    REQUIRE(c < a.count);
    used[c] = true;
  }
  CHECK(std::all_of(used.begin(), used.end(), [](bool x) { return x; }));
}

TEST_CASE("centralities match the oracles on every connected graph up to 8 firms") {
  for (std::size_t n = 2; n <= 8; ++n) {
    std::size_t failures = 0;
    const auto classes = testing::connected_graph_classes(n);
    for (const auto& edges : classes) {
      const auto net = make_graph(n, edges);
      const auto d = testing::oracle::distances(net);
      long sum = 0;
      int diam = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          sum += d[i][j];
          diam = std::max(diam, d[i][j]);
        }
      }
      const auto ps = path_stats(net);
      const double apl = static_cast<double>(sum) / static_cast<double>(n * (n - 1) / 2);
      if (std::abs(ps.average_path_length - apl) > kTol || ps.diameter != static_cast<std::uint32_t>(diam)) ++failures;
      if (!close_all(closeness(net), testing::oracle::closeness(net), kTol)) ++failures;
      if (!close_all(betweenness(net), testing::oracle::betweenness(net), kTol)) ++failures;
      if (!close_all(pagerank(net), testing::oracle::pagerank(net), kTol)) ++failures;
      const auto lc = local_clustering(net);
      const auto oc = testing::oracle::clustering(net);
      const auto ot = testing::oracle::triangles(net);
      for (std::size_t v = 0; v < n; ++v) {
        if (std::abs(lc[v].clustering - oc[v]) > kTol || lc[v].triangles != ot[v]) ++failures;
      }
      // The oracle eigenvector is only defined up to a basis when the top
      // eigenvalue repeats, which cannot happen on a connected graph.
      if (!close_all(eigenvector_centrality(net), testing::oracle::eigenvector(net), kTol)) ++failures;
    }
    INFO("n = " << n << ", graphs = " << classes.size());
    CHECK(failures == 0);
  }
}

TEST_CASE("louvain reaches the best partition on every graph up to 7 firms") {
  Rng rng(43);
  for (std::size_t n = 2; n <= 7; ++n) {
    std::size_t failures = 0;
    for (const auto& edges : testing::graph_classes(n)) {
      if (edges.empty()) continue;
      const auto best = testing::oracle::best_modularity(make_graph(n, edges));
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto net = make_graph(n, testing::relabel(edges, n, rng));
        const auto p = louvain(net, seed);
        if (modularity(net, p) < best - 1e-9) ++failures;
      }
    }
    INFO("n = " << n);
    CHECK(failures == 0);
  }
}

TEST_CASE("louvain never does worse than one community") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const auto net = testing::random_graph(10 + rng.below(60), 0.1, rng);
    if (net.edge_count() == 0) continue;
    const auto p = louvain(net, rng.next());
    CHECK(modularity(net, p) >= -1e-12);
    CHECK(modularity(net, p) == doctest::Approx(testing::oracle::modularity(net, p.community)).epsilon(1e-9));
  }
}

TEST_CASE("an added edge inside a community raises the adjacency term and leaves Q consistent") {
  // With 2m and the degree products held, the only change is A_uv = A_vu = 1,
  // worth 2/2m. The full recomputation must agree with that split.
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const auto net = testing::random_graph(12, 0.25, rng);
    if (net.edge_count() == 0) continue;
    const auto p = louvain(net, trial);
    for (FirmId u = 0; u < net.size(); ++u) {
      for (FirmId v = u + 1; v < net.size(); ++v) {
        if (p.community[u] != p.community[v] || net.has_edge(u, v)) continue;
        const auto after = with_edge(net, u, v);
        const double two_m = 2.0 * static_cast<double>(after.edge_count());
        // Q * 2m = sum of A_ij over intra pairs - sum of k_i k_j / 2m over intra pairs.
        std::vector<double> vol(p.count, 0.0), vol_before(p.count, 0.0);
        for (FirmId x = 0; x < net.size(); ++x) {
          vol[p.community[x]] += static_cast<double>(after.degree(x));
          vol_before[p.community[x]] += static_cast<double>(net.degree(x));
        }
        double held = 0.0, fresh = 0.0;
        for (std::uint32_t c = 0; c < p.count; ++c) {
          held += vol_before[c] * vol_before[c];
          fresh += vol[c] * vol[c];
        }
        const double adjacency_before = modularity(net, p) * (two_m - 2.0) + held / (two_m - 2.0);
        const double adjacency_after = modularity(after, p) * two_m + fresh / two_m;
        CHECK(adjacency_after - adjacency_before == doctest::Approx(2.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("degree and capital distribution examples") {
  const auto d = degree_and_capital_distribution(testing::star_graph(4));
  CHECK(d.degree == std::map<std::size_t, std::size_t>{{1, 4}, {4, 1}});
  CHECK(d.zero_capital == 5);
  CHECK(d.capital.empty());

  const auto eq = degree_and_capital_distribution(make_graph(4, {{0, 1}}, {7.0, 7.0, 7.0, 7.0}));
  REQUIRE(eq.capital.size() == 1);
  CHECK(eq.capital[0].count == 4);
  CHECK(eq.capital[0].lower <= 7.0);
  CHECK(eq.capital[0].upper > 7.0);
}

TEST_CASE("capital bins split each decade into five logarithmic bins") {
  const auto d = degree_and_capital_distribution(make_graph(3, {}, {1.0, 9.99, 10.0}));
  REQUIRE(d.capital.size() == 6);
  CHECK(d.capital[0].lower == doctest::Approx(1.0));
  CHECK(d.capital[0].upper == doctest::Approx(std::pow(10.0, 0.2)));
  CHECK(d.capital[0].count == 1);
  CHECK(d.capital[4].count == 1);
  CHECK(d.capital[5].count == 1);
  for (std::size_t i = 1; i < d.capital.size(); ++i) CHECK(d.capital[i].lower == d.capital[i - 1].upper);
}

TEST_CASE("preferential attachment gives a heavy degree tail") {
  // The density exponent is the CCDF slope minus one.
  double slope_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    slope_sum += degree_ccdf_slope(barabasi_albert(1000, 2, seed), 4);
  }
  const double slope = slope_sum / 20.0;
  INFO("mean CCDF slope " << slope);
  CHECK(slope >= -2.5);
  CHECK(slope <= -1.5);
  CHECK(slope - 1.0 >= -3.5);
  CHECK(slope - 1.0 <= -2.0);
}

TEST_CASE("correlation examples") {
  const std::vector<double> x{1.0, 4.0, 2.0, 8.0, 5.0};
  std::vector<double> neg(x.size());
  std::transform(x.begin(), x.end(), neg.begin(), std::negate<>());
  CHECK(*pearson(x, x) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(*pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(*spearman(x, neg) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(*spearman({1, 2, 3}, {10, 100, 1000}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(pearson({1, 2, 3}, {5, 5, 5}).has_value());
  CHECK(*spearman({1, 2, 2, 3}, {1, 2, 2, 3}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("metric table invariants and correlation matrix shape") {
  const auto net = ba_with_capital(300, 8);
  const auto t = compute_metrics(net);
  REQUIRE(t.size() == 300);
  CHECK(std::accumulate(t.pagerank.begin(), t.pagerank.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  double norm = 0.0;
  for (double x : t.eigenvector) norm += x * x;
  CHECK(std::sqrt(norm) == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t v = 0; v < t.size(); ++v) {
    CHECK(t.triangles[v] == std::round(t.clustering[v] * t.degree[v] * (t.degree[v] - 1.0) / 2.0));
    CHECK(t.pagerank[v] > 0.0);
    CHECK(t.clustering[v] >= 0.0);
    CHECK(t.clustering[v] <= 1.0);
  }
  for (auto kind : {CorrelationKind::kPearson, CorrelationKind::kSpearman}) {
    const auto m = metric_correlation(t, kind);
    REQUIRE(m.names.size() == MetricTable::kColumns.size());
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      CHECK(*m.at(i, i) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t j = 0; j < m.names.size(); ++j) {
        REQUIRE(m.at(i, j).has_value());
        CHECK(*m.at(i, j) == *m.at(j, i));
        CHECK(std::abs(*m.at(i, j)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("a constant column gives undefined correlations, not zero") {
  const auto t = compute_metrics(testing::cycle_graph(5));
  const auto m = metric_correlation(t, CorrelationKind::kPearson);
  CHECK_FALSE(m.at(0, 1).has_value());
  CHECK_FALSE(m.at(0, 0).has_value());
  CHECK_THROWS_AS(metric_correlation(compute_metrics(testing::path_graph(2)), CorrelationKind::kPearson),
                  std::invalid_argument);
}

TEST_CASE("capital drawn apart from structure barely tracks degree") {
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto net = ba_with_capital(1000, 100 + seed);
    std::vector<double> deg, cap;
    for (const Firm& f : net.firms()) {
      deg.push_back(static_cast<double>(net.degree(f.id)));
      cap.push_back(f.registered_capital);
    }
    sum += std::abs(*pearson(deg, cap));
  }
  CHECK(sum / 20.0 < 0.1);
}

TEST_CASE("hubs carry the betweenness on preferential attachment networks") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto net = barabasi_albert(1000, 2, 200 + seed);
    std::vector<double> deg;
    for (FirmId v = 0; v < net.size(); ++v) deg.push_back(static_cast<double>(net.degree(v)));
    CHECK(*pearson(deg, betweenness(net)) > 0.6);
  }
}

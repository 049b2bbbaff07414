#include <doctest.h>

#include <cmath>
#include <numeric>

#include "graphs.hpp"
#include "soc_cascade/graph.hpp"
#include "soc_cascade/rng.hpp"

using namespace soc_cascade;
using testing::make_graph;

namespace {

std::vector<FirmSpec> named(std::initializer_list<const char*> names) {
  std::vector<FirmSpec> out;
  for (const char* n : names) out.push_back({n, 1.0, {}});
  return out;
}

using NamePairs = std::vector<std::pair<std::string, std::string>>;

void check_simple_graph(const SupplyNetwork& net) {
  std::size_t degree_sum = 0;
  for (FirmId v = 0; v < net.size(); ++v) {
    degree_sum += net.degree(v);
    const auto adj = net.neighbors(v);
    CHECK(std::is_sorted(adj.begin(), adj.end()));
    CHECK(std::adjacent_find(adj.begin(), adj.end()) == adj.end());
    for (FirmId u : adj) {
      CHECK(u != v);
      CHECK(net.has_edge(u, v));
      const auto back = net.neighbors(u);
      CHECK(std::binary_search(back.begin(), back.end(), v));
    }
  }
  CHECK(degree_sum == 2 * net.edge_count());
}

}  // namespace

TEST_CASE("reversed duplicates collapse into one edge") {
  const NamePairs edges{{"a", "b"}, {"b", "a"}, {"b", "c"}};
  const auto build = SupplyNetwork::from_edge_list(named({"a", "b", "c"}), edges);
  CHECK(build.network.size() == 3);
  CHECK(build.network.edge_count() == 2);
  CHECK(build.duplicate_edges == 1);
  check_simple_graph(build.network);
}

TEST_CASE("self-loops are dropped and counted") {
  const NamePairs edges{{"a", "a"}, {"a", "b"}};
  const auto build = SupplyNetwork::from_edge_list(named({"a", "b"}), edges);
  CHECK(build.self_loops_dropped == 1);
  CHECK(build.network.edge_count() == 1);
}

TEST_CASE("path of four firms has degrees 1 2 2 1") {
  const NamePairs edges{{"a", "b"}, {"b", "c"}, {"c", "d"}};
  const auto net = SupplyNetwork::from_edge_list(named({"a", "b", "c", "d"}), edges).network;
  std::vector<std::size_t> deg;
  for (const char* n : {"a", "b", "c", "d"}) deg.push_back(net.degree(*net.find(n)));
  CHECK(deg == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("unknown endpoint names the offender") {
  const NamePairs edges{{"a", "ghost"}};
  try {
    (void)SupplyNetwork::from_edge_list(named({"a"}), edges);
    FAIL("expected an error");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("negative capital is rejected") {
  std::vector<FirmSpec> firms{{"a", -1.0, {}}};
  CHECK_THROWS_AS(SupplyNetwork::from_ids(firms, {}), GraphError);
}

TEST_CASE("firm records hold aliases and log capital") {
  std::vector<FirmSpec> firms{{"nvidia", 100.0, {"NVIDIA Corp", "nvda"}}, {"tsmc", 0.0, {}}};
  const std::vector<Edge> edges{{0, 1}};
  const auto net = SupplyNetwork::from_ids(firms, edges).network;
  const Firm& f = net.firm(0);
  CHECK(f.canonical_name == "nvidia");
  CHECK(std::find(f.aliases.begin(), f.aliases.end(), "nvidia") != f.aliases.end());
  CHECK(net.find("nvda") == FirmId{0});
  CHECK(f.log_capital == doctest::Approx(std::log(101.0)).epsilon(1e-15));
  CHECK(net.firm(1).log_capital == 0.0);
}

TEST_CASE("log capital is zero at zero and strictly increasing") {
  CHECK(log_capital(0.0) == 0.0);
  Rng rng(5);
  std::vector<double> caps(500);
  for (double& c : caps) c = rng.uniform() * 1e6;
  std::sort(caps.begin(), caps.end());
  for (std::size_t i = 1; i < caps.size(); ++i) {
    if (caps[i] > caps[i - 1]) CHECK(log_capital(caps[i]) > log_capital(caps[i - 1]));
    CHECK(log_capital(caps[i]) >= 0.0);
  }
}

TEST_CASE("largest component of sizes 3 and 2 is the triangle side") {
  const auto net = make_graph(5, {{0, 1}, {3, 4}, {4, 2}});
  const auto lcc = largest_connected_component(net);
  CHECK(lcc.size() == 3);
  CHECK(lcc.edge_count() == 2);
  for (const char* name : {"v2", "v3", "v4"}) CHECK(lcc.find(name).has_value());
}

TEST_CASE("largest component of a connected graph is the graph") {
  const auto net = testing::cycle_graph(6);
  const auto lcc = largest_connected_component(net);
  CHECK(lcc.size() == net.size());
  CHECK(lcc.edges() == net.edges());
}

TEST_CASE("equal components tie to the one holding the smallest id") {
  const auto net = make_graph(4, {{2, 3}, {0, 1}});
  const auto lcc = largest_connected_component(net);
  CHECK(lcc.size() == 2);
  CHECK(lcc.find("v0").has_value());
  CHECK(lcc.find("v1").has_value());
}

TEST_CASE("component extraction keeps names and capitals") {
  const auto net = make_graph(4, {{1, 2}, {2, 3}}, {5.0, 6.0, 7.0, 8.0});
  const auto lcc = largest_connected_component(net);
  REQUIRE(lcc.size() == 3);
  for (FirmId v = 0; v < lcc.size(); ++v) {
    const auto orig = *net.find(lcc.firm(v).canonical_name);
    CHECK(lcc.firm(v).registered_capital == net.firm(orig).registered_capital);
  }
}

TEST_CASE("empty network has no largest component") {
  CHECK_THROWS_AS(largest_connected_component(SupplyNetwork{}), GraphError);
}

TEST_CASE("random graphs keep the simple-graph invariants and LCC is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(30);
    const auto net = testing::random_graph(n, 0.08, rng);
    check_simple_graph(net);
    const auto once = largest_connected_component(net);
    const auto twice = largest_connected_component(once);
    CHECK(is_connected(once));
    CHECK(once.size() == twice.size());
    CHECK(once.edge_count() == twice.edge_count());
    const auto labels = component_labels(net);
    CHECK(component_count(net) == *std::max_element(labels.begin(), labels.end()) + 1);
  }
}

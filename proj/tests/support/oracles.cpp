#include "oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace testing::oracle {

namespace {

Eigen::MatrixXd adjacency(const SupplyNetwork& net) {
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : net.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

}  // namespace

std::vector<std::vector<int>> distances(const SupplyNetwork& net) {
  const std::size_t n = net.size();
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& [u, v] : net.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    }
  }
  for (auto& row : d) {
    for (int& x : row) {
      if (x >= kInf) x = -1;
    }
  }
  return d;
}

std::vector<double> degree(const SupplyNetwork& net) {
  const Eigen::MatrixXd a = adjacency(net);
  std::vector<double> out(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) out[i] = a.row(static_cast<Eigen::Index>(i)).sum();
  return out;
}

std::vector<double> closeness(const SupplyNetwork& net) {
  const auto d = distances(net);
  std::vector<double> out(net.size(), 0.0);
  for (std::size_t i = 0; i < net.size(); ++i) {
    long sum = 0;
    for (int x : d[i]) sum += x;
    out[i] = sum > 0 ? static_cast<double>(net.size() - 1) / static_cast<double>(sum) : 0.0;
  }
  return out;
}

std::vector<double> betweenness(const SupplyNetwork& net) {
  const std::size_t n = net.size();
  const auto d = distances(net);
  const Eigen::MatrixXd a = adjacency(net);
  // walks[k](i, j): walks of length k from i to j.
  std::vector<Eigen::MatrixXd> walks{Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n),
                                                               static_cast<Eigen::Index>(n))};
  for (std::size_t k = 1; k < n; ++k) walks.push_back(walks.back() * a);
  const auto sigma = [&](std::size_t s, std::size_t t) {
    return walks[static_cast<std::size_t>(d[s][t])](static_cast<Eigen::Index>(s),
                                                    static_cast<Eigen::Index>(t));
  };
  std::vector<double> out(n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] < 0) continue;
      const double total = sigma(s, t);
      for (std::size_t v = 0; v < n; ++v) {
        if (v == s || v == t || d[s][v] < 0 || d[v][t] < 0) continue;
        if (d[s][v] + d[v][t] == d[s][t]) out[v] += sigma(s, v) * sigma(v, t) / total;
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> triangles(const SupplyNetwork& net) {
  const Eigen::MatrixXd a = adjacency(net);
  const Eigen::MatrixXd a3 = a * a * a;
  std::vector<std::uint64_t> out(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    out[i] = static_cast<std::uint64_t>(std::llround(a3(static_cast<Eigen::Index>(i),
                                                        static_cast<Eigen::Index>(i)) / 2.0));
  }
  return out;
}

std::vector<double> clustering(const SupplyNetwork& net) {
  const auto tri = triangles(net);
  const auto deg = degree(net);
  std::vector<double> out(net.size(), 0.0);
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (deg[i] >= 2) out[i] = 2.0 * static_cast<double>(tri[i]) / (deg[i] * (deg[i] - 1.0));
  }
  return out;
}

std::vector<double> eigenvector(const SupplyNetwork& net) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency(net));
  const auto n = static_cast<Eigen::Index>(net.size());
  Eigen::VectorXd v = solver.eigenvectors().col(n - 1);
  if (v.sum() < 0) v = -v;
  v /= v.norm();
  std::vector<double> out(net.size());
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::max(0.0, v(i));
  return out;
}

std::vector<double> pagerank(const SupplyNetwork& net, double damping) {
  const auto n = static_cast<Eigen::Index>(net.size());
  const Eigen::MatrixXd a = adjacency(net);
  // Column-stochastic transition matrix; dangling firms spread uniformly.
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double out_degree = a.col(j).sum();
    for (Eigen::Index i = 0; i < n; ++i) {
      m(i, j) = out_degree > 0 ? a(i, j) / out_degree : 1.0 / static_cast<double>(n);
    }
  }
  const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - damping * m;
  const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, (1.0 - damping) / static_cast<double>(n));
  const Eigen::VectorXd x = lhs.partialPivLu().solve(rhs);
  return {x.data(), x.data() + n};
}

double modularity(const SupplyNetwork& net, const std::vector<std::uint32_t>& community) {
  const Eigen::MatrixXd a = adjacency(net);
  const auto deg = degree(net);
  const double two_m = 2.0 * static_cast<double>(net.edge_count());
  double q = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = 0; j < net.size(); ++j) {
      if (community[i] != community[j]) continue;
      q += a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - deg[i] * deg[j] / two_m;
    }
  }
  return q / two_m;
}

std::vector<std::vector<std::uint32_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> labels(n, 0);
  const std::function<void(std::size_t, std::uint32_t)> grow = [&](std::size_t i, std::uint32_t used) {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (std::uint32_t c = 0; c <= used; ++c) {
      labels[i] = c;
      grow(i + 1, std::max(used, c + 1));
    }
  };
  if (n == 0) return {{}};
  grow(1, 1);
  return out;
}

double best_modularity(const SupplyNetwork& net) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : set_partitions(net.size())) best = std::max(best, modularity(net, p));
  return best;
}

std::size_t levenshtein_recursive(const std::string& a, const std::string& b) {
  if (a.empty()) return b.size();
  if (b.empty()) return a.size();
  const std::string ta = a.substr(1);
  const std::string tb = b.substr(1);
  if (a[0] == b[0]) return levenshtein_recursive(ta, tb);
  return 1 + std::min({levenshtein_recursive(ta, b), levenshtein_recursive(a, tb),
                       levenshtein_recursive(ta, tb)});
}

}  // namespace testing::oracle

#include "bnet/network.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "bnet/errors.hpp"

namespace bnet {

Network::Network(int seller_count) {
  if (seller_count < 1) fail(Errc::MalformedInput, "network needs at least one seller");
  alpha_.assign(seller_count, Rational(0));
  adj_.resize(seller_count);
}

void Network::set_alpha(int i, Rational a) {
  if (i < 0 || i >= size()) fail(Errc::MalformedInput, "seller index out of range");
  if (a.sign() < 0) fail(Errc::MalformedInput, "negative captive-market size");
  alpha_[i] = std::move(a);
}

void Network::add_edge(int i, int j, Rational beta) {
  if (i < 0 || i >= size() || j < 0 || j >= size())
    fail(Errc::MalformedInput, "seller index out of range");
  if (i == j) fail(Errc::MalformedInput, "self-loop market");
  if (beta.sign() <= 0) fail(Errc::MalformedInput, "shared-market size must be positive");
  if (adjacent(i, j)) fail(Errc::MalformedInput, "duplicate market between sellers");
  Edge e{std::min(i, j), std::max(i, j), std::move(beta)};
  adj_[i].emplace_back(j, e.beta);
  adj_[j].emplace_back(i, e.beta);
  edges_.push_back(std::move(e));
}

Rational Network::beta_total(int i) const {
  Rational s(0);
  for (const auto& [j, b] : neighbors(i)) s += b;
  return s;
}

std::optional<Rational> Network::beta(int i, int j) const {
  for (const auto& [k, b] : adj_.at(i))
    if (k == j) return b;
  return std::nullopt;
}

bool Network::connected() const {
  std::vector<char> seen(size(), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (const auto& [w, b] : adj_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == size();
}

Trivia validate_network(const Network& net) {
  if (net.size() == 1) return Trivia::SingleSeller;
  if (!net.connected()) return Trivia::Disconnected;
  bool captive = false;
  for (int i = 0; i < net.size(); ++i)
    if (net.alpha(i).sign() > 0) captive = true;
  return captive ? Trivia::NonTrivial : Trivia::NoCaptive;
}

GraphMetrics graph_metrics(const Network& net) {
  if (!net.connected()) fail(Errc::Disconnected, "graph metrics need a connected network");
  int n = net.size();
  GraphMetrics m;
  m.dist.assign(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    m.dist[s][s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& [w, b] : net.neighbors(v)) {
        if (m.dist[s][w] < 0) {
          m.dist[s][w] = m.dist[s][v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  m.diameter = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.diameter = std::max(m.diameter, m.dist[i][j]);

  m.effective_degree.assign(n, Rational(1));
  m.effective_degree_max = Rational(1);
  m.alpha_max = Rational(0);
  for (int i = 0; i < n; ++i) {
    m.alpha_max = max(m.alpha_max, net.alpha(i));
    if (net.neighbors(i).empty()) continue;  // only possible when n == 1
    Rational mass = net.alpha(i) + net.beta_total(i);
    Rational best(0);
    for (const auto& [j, b] : net.neighbors(i)) best = max(best, mass / b);
    m.effective_degree[i] = best;
    m.effective_degree_max = max(m.effective_degree_max, best);
  }
  return m;
}

bool edge_cut_separates(const Network& net, const std::vector<std::pair<int, int>>& cut_edges,
                        int seller) {
  if (seller < 0 || seller >= net.size()) fail(Errc::MalformedInput, "seller index out of range");
  auto in_cut = [&](int a, int b) {
    for (const auto& [x, y] : cut_edges)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  };
  for (const auto& [x, y] : cut_edges)
    if (!net.beta(x, y))
      fail(Errc::UnknownEdge,
           "cut edge (" + std::to_string(x) + "," + std::to_string(y) + ") not in network");

  std::vector<char> seen(net.size(), 0);
  std::deque<int> queue{seller};
  seen[seller] = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (net.alpha(v).sign() > 0) return false;
    for (const auto& [w, b] : net.neighbors(v)) {
      if (!seen[w] && !in_cut(v, w)) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return true;
}

}  // namespace bnet

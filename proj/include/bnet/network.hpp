#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bnet/rational.hpp"

namespace bnet {

/// Sellers are dense indices 0..n-1.  alpha_i is seller i's captive-market
/// size; each edge {i,j} is a market shared by exactly two sellers with size
/// beta_ij > 0.  String labels live at the file-format boundary, not here.
class Network {
 public:
  struct Edge {
    int a, b;  // a < b
    Rational beta;
  };

  explicit Network(int seller_count);

  void set_alpha(int i, Rational a);
  void add_edge(int i, int j, Rational beta);

  int size() const { return static_cast<int>(alpha_.size()); }
  const Rational& alpha(int i) const { return alpha_.at(i); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::pair<int, Rational>>& neighbors(int i) const { return adj_.at(i); }

  /// beta_i = total size of seller i's shared markets.
  Rational beta_total(int i) const;
  std::optional<Rational> beta(int i, int j) const;
  bool adjacent(int i, int j) const { return beta(i, j).has_value(); }

  bool connected() const;

 private:
  std::vector<Rational> alpha_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, Rational>>> adj_;
};

enum class Trivia { NonTrivial, NoCaptive, Disconnected, SingleSeller };

/// NonTrivial iff connected, n >= 2 and some captive market exists.
Trivia validate_network(const Network& net);

struct GraphMetrics {
  std::vector<std::vector<int>> dist;  // hop counts
  int diameter = 0;
  std::vector<Rational> effective_degree;  // Delta_i = max_j (alpha_i + beta_i) / beta_ij
  Rational effective_degree_max;           // Delta
  Rational alpha_max;
};

/// BFS distances, diameter and effective degrees.  Throws Disconnected.
GraphMetrics graph_metrics(const Network& net);

/// True iff removing cut_edges disconnects `seller` from every seller with a
/// captive market.  Throws UnknownEdge for edges not present in the network.
bool edge_cut_separates(const Network& net, const std::vector<std::pair<int, int>>& cut_edges,
                        int seller);

}  // namespace bnet

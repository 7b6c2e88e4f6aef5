#pragma once

#include <random>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/rational.hpp"
#include "bnet/strategy.hpp"

namespace bnet::testing {

inline Rational rat(long n, long d = 1) { return Rational(n, d); }

inline Network unit_line(int n, const Rational& alpha1 = Rational(1)) {
  Network net(n);
  net.set_alpha(0, alpha1);
  for (int i = 0; i + 1 < n; ++i) net.add_edge(i, i + 1, Rational(1));
  return net;
}

inline Network line(const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  Network net(static_cast<int>(alpha.size()));
  for (size_t i = 0; i < alpha.size(); ++i) net.set_alpha(static_cast<int>(i), alpha[i]);
  for (size_t i = 0; i < beta.size(); ++i)
    net.add_edge(static_cast<int>(i), static_cast<int>(i + 1), beta[i]);
  return net;
}

inline Network cycle(const std::vector<Rational>& alpha, const std::vector<Rational>& beta) {
  int n = static_cast<int>(alpha.size());
  Network net(n);
  for (int i = 0; i < n; ++i) net.set_alpha(i, alpha[i]);
  for (int i = 0; i < n; ++i) net.add_edge(i, (i + 1) % n, beta[i]);
  return net;
}

/// Fibonacci with N_0 = N_1 = 1.
inline long fibonacci(int i) {
  long a = 1, b = 1;
  for (int k = 2; k <= i; ++k) {
    long c = a + b;
    a = b;
    b = c;
  }
  return i <= 1 ? 1 : b;
}

/// Independent deviation oracle: scan u_i over a uniform price grid and
/// report the best (price, payoff) pair.  Used to cross-check the verifier.
struct GridScan {
  Rational best_price;
  Rational best_value;
};

inline GridScan grid_best_response(const Network& net, int seller, const StrategyProfile& prof,
                                   int points) {
  GridScan out{Rational(1), utility(net, seller, Rational(1), prof)};
  for (int g = 1; g <= points; ++g) {
    Rational x(static_cast<long>(g), static_cast<long>(points));
    Rational u = utility(net, seller, x, prof);
    if (u > out.best_value) {
      out.best_value = u;
      out.best_price = x;
    }
  }
  return out;
}

/// Random tree on n sellers with a single captive market at the root and
/// integer edge weights in [1, 5].
inline Network random_tree(int n, std::mt19937_64& rng, const Rational& alpha_root) {
  Network net(n);
  net.set_alpha(0, alpha_root);
  std::uniform_int_distribution<long> weight(1, 5);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    net.add_edge(pick(rng), v, Rational(weight(rng)));
  }
  return net;
}

/// Random connected graph with all alpha = 0 (for the no-captive theorems).
inline Network random_connected_no_captive(int n, double extra_edge_prob, std::mt19937_64& rng) {
  Network net(n);
  std::uniform_int_distribution<long> weight(1, 4);
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> pick(0, v - 1);
    net.add_edge(pick(rng), v, Rational(weight(rng)));
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!net.adjacent(a, b) && unif(rng) < extra_edge_prob) net.add_edge(a, b, Rational(weight(rng)));
  return net;
}

}  // namespace bnet::testing

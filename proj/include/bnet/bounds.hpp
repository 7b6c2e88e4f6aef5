#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/rational.hpp"

namespace bnet {

struct BoundViolation {
  int seller_i, seller_j;  // edge whose neighbor bound fails (j shortchanged)
  Rational required, actual;
  std::string detail;
};

/// Flags every edge (i,j) with u_j < u_i / Delta_i (checked both ways).
/// Utilities must come from a verified equilibrium for the bound to apply.
std::vector<BoundViolation> neighbor_bound(const Network& net, const std::vector<Rational>& u);

/// alpha_max / Delta^D <= u_j <= alpha_max * Delta^D for every seller.
std::vector<std::pair<Rational, Rational>> path_bounds(const Network& net);

struct CutBound {
  Rational epsilon;   // max over G of alpha_i + sum of beta leaving G
  Rational delta_g;   // effective degree inside G (full incident mass in the numerator)
  int diameter_g;     // largest component diameter of the induced subgraph
  Rational bound;     // epsilon * delta_g^diameter_g, applies to every i in G
};

/// Lemma-cut bound for a seller subset G; epsilon is computed, not supplied.
CutBound cut_bound(const Network& net, const std::vector<int>& group);

struct BigCutBound {
  std::vector<int> separated;        // G: sellers cut off from every captive market
  std::vector<int> big_side;         // B: endpoints of the big edges
  std::vector<int> bounded_sellers;  // G minus B, whom the bound covers
  Rational big_scale;                // M = smallest big-edge size
  Rational delta;                    // max of the two subnetwork effective degrees
  int diameter;                      // max of the two subnetwork diameters
  Rational bound;                    // n^2 * delta^(2 diameter) / M
};

/// Two-scale cut bound: big_edges (sizes >= their minimum M) must separate a
/// captive-free seller set; every other market size and every alpha must be
/// <= small_scale <= 1.  Throws PreconditionViolated otherwise.
BigCutBound big_cut_bound(const Network& net, const std::vector<std::pair<int, int>>& big_edges,
                          const Rational& small_scale = Rational(1));

/// Index of a seller with u_i = alpha_i (tolerance for float-derived u), or
/// -1.  Every equilibrium of a non-trivial network has one.
int attains_alpha(const Network& net, const std::vector<Rational>& u, double tol = 0.0);

}  // namespace bnet

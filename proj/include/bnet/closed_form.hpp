#pragma once

#include <vector>

#include "bnet/network.hpp"
#include "bnet/sketch.hpp"
#include "bnet/strategy.hpp"

namespace bnet {

struct TwoSellerSolution {
  Rational t2;        // shared support is [t2, 1]
  Rational atom;      // seller 1's atom at 1 (0 iff symmetric)
  std::vector<Rational> utilities;
  StrategyProfile profile;
};

/// Two sellers sharing a market, alpha1 >= alpha2 >= 0.  Both sellers price
/// on [t2, 1] with t2 = alpha1/(alpha1+beta); when both captive markets are
/// empty this degenerates to the pure all-price-zero profile.
TwoSellerSolution solve_two_sellers(const Rational& alpha1, const Rational& alpha2,
                                    const Rational& beta);

struct Line3Solution {
  Rational fbar2_at_t2;  // beta12 / (beta12 + beta23)
  Rational t2, t3;
  Rational atom1;        // = t2
  std::vector<Rational> utilities;
  StrategyProfile profile;
};

/// Path 1-2-3 where only seller 1 has a captive market.
Line3Solution solve_line3(const Rational& alpha1, const Rational& beta12, const Rational& beta23);

/// Staggered support intervals of the tree equilibrium: seller v prices on
/// [L_v, H_v]; the upper part [M_v, H_v] is shared with the parent and the
/// lower part [L_v, M_v] with the children.
struct TreeIntervals {
  int root = 0;
  std::vector<int> parent;          // parent[root] = -1
  std::vector<Rational> low, mid, high;
  std::vector<Rational> fbar_at_mid;  // Fbar_v(M_v)
};

struct TreeSolution {
  TreeIntervals intervals;
  std::vector<Rational> utilities;  // u_r = alpha_r, u_v = M_v beta_{v P(v)}
  SketchSolution sketch_solution;
  StrategyProfile profile;
};

/// Tree with exactly one captive market at `root`.  Bottom-up recursion
/// fixes Fbar_v(M_v), top-down products fix the interval profile; the CDFs
/// come from the induced sketch.  Throws NotATree / MultipleCaptive.
TreeSolution solve_tree_single_captive(const Network& net, int root);

/// Path with the captive market at one endpoint; delegates to the tree
/// solver and asserts the line sketch shape S_{i_k} = [t_{k+1}, t_{k-1}].
TreeSolution solve_line_single_captive(const Network& net);

enum class StarCase { CenterAtom, PeripheralAtom };

struct StarSolution {
  std::vector<int> order;       // order[r] = original index of rank-r peripheral (descending alpha)
  std::vector<Rational> cut;    // b_0 = 1 >= b_1 >= ... >= b_n, internal order
  std::vector<Rational> center_fbar;  // Fbar_0(b_i), i = 0..n
  StarCase kind = StarCase::CenterAtom;
  int atom_seller = 0;          // rank j of the atom holder in PeripheralAtom case
  Rational center_utility;
  std::vector<Rational> utilities;    // u_0 then peripherals in ORIGINAL order
  StrategyProfile profile;            // seller 0 = center, 1..n original order
};

/// Star with unit spokes and generic captive markets, every alpha > 0.
/// Case 1: the recurrence stays positive at 1 and the center holds the atom
/// (u_0 = alpha_0).  Case 2: the first negative step at rank j makes sellers
/// of rank < j price at 1 outright and rank j hold the atom.
/// Throws NonGeneric on tied alphas or a recurrence value of exactly 0.
StarSolution solve_star(const Rational& alpha0, const std::vector<Rational>& peripheral_alpha);

/// Same, but taking a Network (seller 0 must be the center of a unit-spoke
/// star).  Throws NonUnitSpokes when a spoke differs from 1.
StarSolution solve_star(const Network& net);

struct CliqueCandidate {
  std::vector<Rational> t;  // t_1 = 1 > ... > t_n
  std::vector<Rational> q;  // q_i = Fbar_i(t_i); q_1 is seller 1's atom
  std::vector<Rational> utilities;
  StrategyProfile profile;
  /// Always true: the construction this follows is known to admit profitable
  /// deviations on some instances, so callers must run the verifier before
  /// calling the result an equilibrium.
  bool flagged = true;
};

/// Clique with unit pairwise markets and strictly descending alphas.  Stage
/// recursion from the bottom seller upward; throws ConstructionBroken when a
/// q_i leaves (0,1).
CliqueCandidate clique_candidate(const std::vector<Rational>& alpha_descending);

}  // namespace bnet

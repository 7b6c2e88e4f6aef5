#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/simplex.hpp"
#include "bnet/strategy.hpp"

namespace bnet {

/// The combinatorial skeleton of an equilibrium: each seller's support as a
/// finite union of closed intervals in (0,1], plus the set R_0 of sellers
/// with an atom at 1.  Derived data: the boundary points T = {t_1 > ... >
/// t_k}, the interval seller sets R_j (support contains (t_{j+1}, t_j)) and
/// per-seller boundary sets T_i = (S_i cap T) plus {1} for atom holders.
class Sketch {
 public:
  Sketch() = default;

  /// supports[i] = ascending list of disjoint closed intervals; a seller
  /// whose whole strategy is the atom at 1 has an empty list and sits in
  /// atoms only.  Rejects adjacent sellers that both hold an atom.
  Sketch(const Network& net, std::vector<std::vector<std::pair<Rational, Rational>>> supports,
         std::set<int> atoms);

  int sellers() const { return static_cast<int>(supports_.size()); }
  const std::vector<std::vector<std::pair<Rational, Rational>>>& supports() const {
    return supports_;
  }
  const std::set<int>& atoms() const { return atoms_; }

  /// Boundary points, descending; boundary_points()[0] is t_1.
  const std::vector<Rational>& boundary_points() const { return points_; }
  int k() const { return static_cast<int>(points_.size()); }

  /// Sellers whose support contains the open interval (t_{j+1}, t_j) for
  /// j in 1..k-1 (0-indexed: interval_sellers()[j-1]).
  const std::vector<std::vector<int>>& interval_sellers() const { return in_interval_; }
  bool in_interval(int seller, int j) const;  // j in 1..k-1

  /// Indices into boundary_points() that lie in seller i's support.
  const std::vector<std::vector<int>>& seller_boundary() const { return seller_points_; }

 private:
  std::vector<std::vector<std::pair<Rational, Rational>>> supports_;
  std::set<int> atoms_;
  std::vector<Rational> points_;
  std::vector<std::vector<int>> in_interval_;
  std::vector<std::vector<int>> seller_points_;
};

/// LP1 over variables u_i and Fbar_i(t).  Strict constraints (yes-atom,
/// CDF-mon) are encoded as lhs - rhs >= s with a shared slack variable s and
/// the objective max s; the sketch is feasible iff the optimum has s > 0.
struct Lp1 {
  RationalSimplex lp;
  int var_s;                                          // shared strictness slack
  std::vector<std::pair<int, Rational>> objective;    // max s
  int var_u(int seller) const { return seller; }
  int var_fb(int seller, int tindex) const { return n + seller * k + tindex; }
  int n, k;
};

Lp1 build_lp1(const Network& net, const Sketch& sketch);

struct SketchSolution {
  Sketch sketch;
  std::vector<std::vector<Rational>> fbar;  // [seller][tindex]
  std::vector<Rational> utilities;
  /// Smallest margin over the strict constraints (atom sizes, in-support
  /// decrease); positive for any valid solution.
  Rational min_slack;
  /// True when the beta submatrices have full rank, i.e. the solution is the
  /// unique one satisfying the sketch.
  bool unique = false;
  /// False when the values came from a float path and were not snapped.
  bool exact = true;
};

struct SketchSolveOutcome {
  bool feasible = false;
  SketchSolution solution;                     // valid when feasible
  std::vector<std::string> violated_constraints;  // certificate otherwise
};

/// Solve LP1 exactly.  Infeasibility (including "the strict constraints only
/// hold with equality", e.g. an atom forced to size 0) reports the violated
/// constraint set.
SketchSolveOutcome solve_sketch(const Network& net, const Sketch& sketch,
                                PivotRule rule = PivotRule::BlandLow);

/// For every interval j, the |R_j| x |R_j| matrix with entries beta_{i,r}
/// (zero diagonal, zero where no edge) must be nonsingular.
bool check_full_rank(const Network& net, const Sketch& sketch);

/// Interpolate Fbar linearly in 1/x between boundary values; constant where
/// the seller is outside its support; atom at 1 for sellers in R_0.  Throws
/// InterpolationNotMonotone if a within-support piece fails to decrease.
StrategyProfile sketch_solution_to_profile(const SketchSolution& ss);

/// Build the boundary values of a solution from per-interval masses
/// F_{i,j} (mass of seller i on interval j; j = 0 denotes the atom at 1),
/// the format used for hand-specified equilibria.
SketchSolution solution_from_masses(const Network& net, const Sketch& sketch,
                                    const std::vector<std::vector<Rational>>& interval_mass,
                                    const std::vector<Rational>& atom_mass,
                                    std::vector<Rational> utilities);

}  // namespace bnet

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/sketch.hpp"

namespace bnet {

/// A sketch whose interval structure is known but whose boundary points are
/// not: t_1 = 1 is fixed, t_2..t_k are unknowns.  interval_sellers[j-1] is
/// R_j, the sellers pricing on (t_{j+1}, t_j); atoms is R_0.
struct FreeBoundarySketch {
  int k = 0;
  std::set<int> atoms;
  std::vector<std::vector<int>> interval_sellers;  // size k-1
};

enum class SearchStatus { Converged, NoConvergence, StrictViolated };

struct SearchOptions {
  std::uint64_t seed = 0;
  int max_iterations = 500;
  int max_restarts = 20;
  double residual_tol = 1e-12;
  /// Optional explicit guess for t_2..t_k (descending); otherwise a geometric
  /// sequence down to 1/2 is used and restarts perturb it by +-20%.
  std::optional<std::vector<double>> initial_t;
  /// Denominator cap for the exact rational snap of a converged solution.
  unsigned long snap_max_den = 1000000;
};

struct BoundarySearchResult {
  SearchStatus status = SearchStatus::NoConvergence;
  /// Valid for Converged and StrictViolated: a root of the equality system.
  /// `solution.exact` tells whether the rational snap reproduced it exactly.
  SketchSolution solution;
  double residual = 0.0;
  int attempts = 0;
  std::vector<std::string> violations;  // strict/inequality failures
};

/// Treat LP1's equalities (eq-util, starts-0, no-atom, out-support) as a
/// nonlinear system in (t, Fbar, u) and solve by damped Gauss-Newton; then
/// check the strict and off-support constraints.  A root whose values snap
/// onto rationals with denominator <= snap_max_den and re-check exactly is
/// returned exact.
BoundarySearchResult solve_free_boundaries(const Network& net, const FreeBoundarySketch& fbs,
                                           const SearchOptions& opt = {});

}  // namespace bnet

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/strategy.hpp"

namespace bnet {

/// Expected share of a tied market.  SplitEqually and RandomUniform both
/// award 1/2 in expectation (the winner of a uniform coin flip); the
/// equilibria do not depend on the choice, which the tests echo.
enum class TieRule { SplitEqually, LowerIndexWins, RandomUniform };

struct FpConfig {
  int grid = 1000;           // m grid points over [delta, 1]
  long iterations = 100000;  // total best-response rounds, round-robin
  TieRule tie = TieRule::SplitEqually;
  std::uint64_t seed = 0;    // breaks ties between equally good grid prices
  double burnin = 0.10;      // leading fraction of rounds dropped from the report
};

struct EmpiricalProfile {
  std::vector<double> grid_price;          // ascending, last = 1
  std::vector<std::vector<double>> mass;   // [seller][grid], each row sums to 1
};

/// Grid lower end: min_i alpha_i/(alpha_i + beta_i) when that minimum is
/// positive (every seller captive), else 1/m.
double fp_grid_floor(const Network& net, int grid);

/// Discretized fictitious play: each round one seller (round-robin) plays an
/// exact best response on the grid against the opponents' empirical
/// mixtures.  Deterministic for a fixed seed.
EmpiricalProfile run_fictitious_play(const Network& net, const FpConfig& cfg);

/// Per-seller sup_g |F_emp(x_g) - F_analytic(x_g)|.
std::vector<double> kolmogorov_distance(const EmpiricalProfile& emp, const StrategyProfile& prof);

/// CSV with header "seller,gridPrice,mass".
std::string histogram_csv(const EmpiricalProfile& emp);

}  // namespace bnet

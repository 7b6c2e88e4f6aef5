#pragma once

#include <utility>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/rational.hpp"

namespace bnet {

/// One piece of a complementary CDF: Fbar(x) = a + b/x on [xlo, xhi].
/// Fbar(x) = 1 - F^-(x) is the probability of pricing at or above x; every
/// equilibrium CDF in this model is piecewise linear in 1/x.
struct CdfSegment {
  Rational xlo, xhi, a, b;
  Rational value_at(const Rational& x) const { return a + b / x; }
};

/// A mixed pricing strategy.  Segments are contiguous and ascending, cover
/// [inf support, sup], and agree at shared endpoints; an optional atom sits
/// at price 1.  Below the first segment Fbar = 1; above the last (for x < 1)
/// Fbar keeps its terminal value, which equals the atom mass.
///
/// Two degenerate forms: no segments + atom 1 is the point mass at price 1;
/// no segments + atom 0 is the point mass at price 0 (the pure strategy of
/// the no-captive-market equilibrium).
class PiecewiseCdf {
 public:
  enum class Value { F, Fminus, Fbar, Atom };

  PiecewiseCdf(std::vector<CdfSegment> segments, Rational atom_at_one);

  static PiecewiseCdf point_mass_at_one() { return PiecewiseCdf({}, Rational(1)); }
  static PiecewiseCdf zero_price() { return PiecewiseCdf({}, Rational(0)); }

  bool is_zero_price() const { return segments_.empty() && atom_.is_zero(); }
  bool always_prices_one() const { return segments_.empty() && atom_ == Rational(1); }

  const std::vector<CdfSegment>& segments() const { return segments_; }
  const Rational& atom_at_one() const { return atom_; }

  /// Evaluate at x in [0,1]; throws OutOfDomain outside.
  Rational eval(const Rational& x, Value mode) const;

  /// Closed intervals where mass lies (strictly decreasing pieces plus the
  /// atom), merged; the zero-price strategy reports [0,0].
  std::vector<std::pair<Rational, Rational>> support() const;
  Rational support_inf() const;
  Rational support_sup() const;

  /// Mass carried by the segments (1 - atom for a valid cdf).
  Rational segment_mass() const;

 private:
  std::vector<CdfSegment> segments_;
  Rational atom_;
};

struct StrategyProfile {
  std::vector<PiecewiseCdf> cdfs;
  int size() const { return static_cast<int>(cdfs.size()); }
};

/// All-sellers point mass at price 0 (Bertrand collapse).
StrategyProfile zero_profile(int sellers);

/// u_i(x) = x (alpha_i + sum_j beta_ij Fbar_j(x)).  At x = 1 the Fbar values
/// are the opponents' atom masses, which encodes the convention that i wins
/// the tie at 1; u_i(1) is then the limit of u_i from below.
Rational utility(const Network& net, int seller, const Rational& x, const StrategyProfile& prof);

/// Utility under the losing-ties convention (1 - F_j(x) instead of Fbar_j).
/// Differs from `utility` only where an opponent has an atom; used to check
/// that verdicts are tie-rule independent.
Rational utility_lose_ties(const Network& net, int seller, const Rational& x,
                           const StrategyProfile& prof);

/// Sorted ascending union of all segment endpoints plus {1}.  Every u_i is
/// linear in x between consecutive breakpoints.
std::vector<Rational> breakpoints(const StrategyProfile& prof);

}  // namespace bnet

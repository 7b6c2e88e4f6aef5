#pragma once

#include <string>
#include <vector>

#include "bnet/network.hpp"
#include "bnet/scalar.hpp"
#include "bnet/strategy.hpp"

namespace bnet {

enum class Verdict { Equilibrium, NotEquilibrium, Inconclusive };

struct Finding {
  enum class Kind {
    AtomBelowOne,        // mass at a price below 1 (only equilibria of no-captive nets allow it)
    SharedAtom,          // two neighbors both hold an atom at 1
    SupportUnion,        // support sticks out past the union of the neighbors' supports
    InfimumAtZero,       // support not bounded away from 0
    LocalMaxSupremum,    // a local-maximum supremum below 1
  };
  Kind kind;
  std::vector<int> sellers;
  std::string detail;
};

struct SellerDiagnostics {
  /// Utility guaranteed on the support (minimum over support boundary points;
  /// in an equilibrium the utility is constant there, so this is u_i).
  Rational utility;
  Rational worst_price;  // price achieving the largest utility anywhere
  Rational worst_gain;   // that utility minus `utility`; <= 0 means no profitable deviation
};

struct VerifyOptions {
  bool exact = true;   // exact: gains compared to 0; float: compared to tol
  double tol = 1e-8;
};

struct VerificationReport {
  Verdict verdict = Verdict::NotEquilibrium;
  std::vector<SellerDiagnostics> sellers;
  std::vector<Finding> findings;
  Rational max_violation;  // largest positive deviation gain (0 when none)
  bool exact = true;
  double tol = 0.0;
};

/// The paper's structural necessary conditions.  SharedAtom applies to every
/// network; the remaining checks only constrain non-trivial networks (a
/// no-captive network's equilibrium is the all-zero profile, which would
/// trip them).
std::vector<Finding> structural_checks(const Network& net, const StrategyProfile& prof);

/// Decide whether the profile is a mixed Nash equilibrium.  Utilities are
/// piecewise linear between profile breakpoints, so the exact supremum of
/// every deviation is attained at a breakpoint (price 0 is added as a
/// candidate only for no-captive networks).
VerificationReport verify_profile(const Network& net, const StrategyProfile& prof,
                                  const VerifyOptions& opt = {});

std::string to_string(Verdict v);
std::string to_string(Finding::Kind k);

}  // namespace bnet

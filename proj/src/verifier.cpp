#include "bnet/verifier.hpp"

#include <algorithm>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

using Interval = std::pair<Rational, Rational>;

std::vector<Interval> merge_intervals(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end());
  std::vector<Interval> out;
  for (auto& iv : ivs) {
    if (!out.empty() && iv.first <= out.back().second)
      out.back().second = max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  return out;
}

// [lo, hi] covered by the merged union?
bool covered(const std::vector<Interval>& merged, const Rational& lo, const Rational& hi) {
  Rational pos = lo;
  for (const auto& [a, b] : merged) {
    if (a > pos) return false;  // merged is sorted: gap before pos is final
    if (b >= pos) {
      pos = b;
      if (pos >= hi) return true;
    }
  }
  return pos >= hi;
}

}  // namespace

std::vector<Finding> structural_checks(const Network& net, const StrategyProfile& prof) {
  if (prof.size() != net.size()) fail(Errc::MalformedInput, "profile size mismatch");
  std::vector<Finding> out;
  int n = net.size();

  // Lemma "no two sellers who share a market both have an atom": holds in
  // every equilibrium of every network.
  for (const auto& e : net.edges()) {
    if (prof.cdfs[e.a].atom_at_one().sign() > 0 && prof.cdfs[e.b].atom_at_one().sign() > 0) {
      std::ostringstream os;
      os << "sellers " << e.a << " and " << e.b << " both hold an atom at 1";
      out.push_back({Finding::Kind::SharedAtom, {e.a, e.b}, os.str()});
    }
  }

  if (validate_network(net) != Trivia::NonTrivial) return out;

  for (int i = 0; i < n; ++i) {
    if (prof.cdfs[i].is_zero_price()) {
      out.push_back({Finding::Kind::AtomBelowOne,
                     {i},
                     "seller " + std::to_string(i) + " holds an atom below price 1"});
      out.push_back({Finding::Kind::InfimumAtZero,
                     {i},
                     "seller " + std::to_string(i) + " prices are not bounded away from 0"});
    }
  }

  // Support of every seller, excluding the point 1, must lie inside the
  // union of the neighbors' supports.
  for (int i = 0; i < n; ++i) {
    if (prof.cdfs[i].is_zero_price()) continue;
    std::vector<Interval> nbr;
    for (const auto& [j, b] : net.neighbors(i))
      for (const auto& iv : prof.cdfs[j].support()) nbr.push_back(iv);
    auto merged = merge_intervals(std::move(nbr));
    for (const auto& [lo, hi] : prof.cdfs[i].support()) {
      if (lo == kOne && hi == kOne) continue;  // the atom point itself is exempt
      if (!covered(merged, lo, hi)) {
        std::ostringstream os;
        os << "support piece [" << lo << "," << hi << "] of seller " << i
           << " is not inside the neighbors' supports";
        out.push_back({Finding::Kind::SupportUnion, {i}, os.str()});
      }
    }
  }

  // A supremum that is locally maximal must equal 1.
  for (int i = 0; i < n; ++i) {
    if (prof.cdfs[i].is_zero_price()) continue;
    Rational sup_i = prof.cdfs[i].support_sup();
    if (sup_i == kOne) continue;
    bool local_max = true;
    for (const auto& [j, b] : net.neighbors(i)) {
      if (prof.cdfs[j].is_zero_price()) continue;
      if (prof.cdfs[j].support_sup() > sup_i) local_max = false;
    }
    if (local_max) {
      std::ostringstream os;
      os << "seller " << i << " has the locally maximal supremum " << sup_i << " below 1";
      out.push_back({Finding::Kind::LocalMaxSupremum, {i}, os.str()});
    }
  }
  return out;
}

VerificationReport verify_profile(const Network& net, const StrategyProfile& prof,
                                  const VerifyOptions& opt) {
  if (prof.size() != net.size()) fail(Errc::MalformedInput, "profile size mismatch");
  VerificationReport rep;
  rep.exact = opt.exact;
  rep.tol = opt.exact ? 0.0 : opt.tol;
  rep.findings = structural_checks(net, prof);

  bool no_captive = true;
  for (int i = 0; i < net.size(); ++i)
    if (net.alpha(i).sign() > 0) no_captive = false;

  std::vector<Rational> candidates = breakpoints(prof);
  if (no_captive) candidates.insert(candidates.begin(), kZero);

  rep.max_violation = kZero;
  for (int i = 0; i < net.size(); ++i) {
    const auto support = prof.cdfs[i].support();
    auto in_support = [&](const Rational& x) {
      for (const auto& [lo, hi] : support)
        if (lo <= x && x <= hi) return true;
      return false;
    };

    SellerDiagnostics d;
    bool have_support_value = false;
    bool have_best = false;
    Rational best_value;
    for (const auto& x : candidates) {
      Rational u = utility(net, i, x, prof);
      if (!have_best || u > best_value) {
        have_best = true;
        best_value = u;
        d.worst_price = x;
      }
      if (in_support(x)) {
        if (!have_support_value || u < d.utility) d.utility = u;
        have_support_value = true;
      }
    }
    // The support's own boundary points are profile breakpoints, except for
    // the zero-price strategy whose support point 0 earns exactly 0.
    if (!have_support_value) {
      if (prof.cdfs[i].is_zero_price())
        d.utility = kZero;
      else
        fail(Errc::InvalidCdf, "support of seller " + std::to_string(i) +
                                   " contains no profile breakpoint");
    }
    d.worst_gain = best_value - d.utility;
    rep.max_violation = max(rep.max_violation, d.worst_gain);
    rep.sellers.push_back(std::move(d));
  }

  if (!rep.findings.empty()) {
    rep.verdict = Verdict::NotEquilibrium;
    return rep;
  }
  if (opt.exact) {
    rep.verdict = rep.max_violation.sign() > 0 ? Verdict::NotEquilibrium : Verdict::Equilibrium;
  } else {
    double g = rep.max_violation.to_double();
    if (g <= opt.tol)
      rep.verdict = Verdict::Equilibrium;
    else if (g < 10 * opt.tol)
      rep.verdict = Verdict::Inconclusive;
    else
      rep.verdict = Verdict::NotEquilibrium;
  }
  return rep;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equilibrium: return "Equilibrium";
    case Verdict::NotEquilibrium: return "NotEquilibrium";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Finding::Kind k) {
  switch (k) {
    case Finding::Kind::AtomBelowOne: return "AtomBelowOne";
    case Finding::Kind::SharedAtom: return "SharedAtom";
    case Finding::Kind::SupportUnion: return "SupportUnion";
    case Finding::Kind::InfimumAtZero: return "InfimumAtZero";
    case Finding::Kind::LocalMaxSupremum: return "LocalMaxSupremum";
  }
  return "?";
}

}  // namespace bnet

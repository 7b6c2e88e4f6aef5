#include "bnet/strategy.hpp"

#include <algorithm>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

}  // namespace

PiecewiseCdf::PiecewiseCdf(std::vector<CdfSegment> segments, Rational atom_at_one)
    : segments_(std::move(segments)), atom_(std::move(atom_at_one)) {
  if (atom_.sign() < 0 || atom_ > kOne) fail(Errc::InvalidCdf, "atom mass outside [0,1]");
  if (segments_.empty()) return;  // degenerate point masses

  for (const auto& s : segments_) {
    if (s.xlo.sign() <= 0 || s.xhi > kOne || !(s.xlo < s.xhi))
      fail(Errc::InvalidCdf, "segment bounds must satisfy 0 < xlo < xhi <= 1");
    if (s.b.sign() < 0)
      fail(Errc::InvalidCdf, "segment with increasing Fbar (negative mass)");
  }
  for (size_t k = 0; k + 1 < segments_.size(); ++k) {
    if (segments_[k].xhi != segments_[k + 1].xlo)
      fail(Errc::InvalidCdf, "segments not contiguous");
    if (segments_[k].value_at(segments_[k].xhi) !=
        segments_[k + 1].value_at(segments_[k + 1].xlo))
      fail(Errc::InvalidCdf, "segments disagree at shared endpoint");
  }
  if (segments_.front().value_at(segments_.front().xlo) != kOne)
    fail(Errc::InvalidCdf, "Fbar must be 1 at the bottom of the support");
  const auto& last = segments_.back();
  Rational terminal = last.value_at(last.xhi);
  if (terminal.sign() < 0) fail(Errc::InvalidCdf, "negative Fbar value");
  if (terminal != atom_)
    fail(Errc::InvalidCdf, "terminal Fbar value must equal the atom mass at 1");
}

Rational PiecewiseCdf::eval(const Rational& x, Value mode) const {
  if (x.sign() < 0 || x > kOne) fail(Errc::OutOfDomain, "price outside [0,1]");

  Rational fbar;
  if (is_zero_price()) {
    fbar = x.is_zero() ? kOne : kZero;
    switch (mode) {
      case Value::Fbar: return fbar;
      case Value::F: return kOne;
      case Value::Fminus: return x.is_zero() ? kZero : kOne;
      case Value::Atom: return x.is_zero() ? kOne : kZero;
    }
  }

  if (segments_.empty()) {
    fbar = atom_;  // point mass at 1: prices >= x for every x <= 1
  } else if (x < segments_.front().xlo) {
    fbar = kOne;
  } else if (x > segments_.back().xhi) {
    fbar = atom_;  // terminal value; at x = 1 this is the atom mass
  } else {
    for (const auto& s : segments_) {
      if (x >= s.xlo && x <= s.xhi) {
        fbar = s.value_at(x);
        break;
      }
    }
  }

  switch (mode) {
    case Value::Fbar:
      return fbar;
    case Value::F:
      // F(1) = 1; below 1 there are no atoms, so F = F^- = 1 - Fbar.
      return x == kOne ? kOne : kOne - fbar;
    case Value::Fminus:
      return kOne - fbar;
    case Value::Atom:
      return x == kOne ? atom_ : kZero;
  }
  return kZero;  // unreachable
}

std::vector<std::pair<Rational, Rational>> PiecewiseCdf::support() const {
  std::vector<std::pair<Rational, Rational>> out;
  if (is_zero_price()) {
    out.emplace_back(kZero, kZero);
    return out;
  }
  for (const auto& s : segments_) {
    if (s.b.sign() <= 0) continue;  // flat stretch carries no mass
    if (!out.empty() && out.back().second == s.xlo)
      out.back().second = s.xhi;
    else
      out.emplace_back(s.xlo, s.xhi);
  }
  if (atom_.sign() > 0) {
    if (!out.empty() && out.back().second == kOne)
      ;  // atom sits at the top of the last interval
    else
      out.emplace_back(kOne, kOne);
  }
  return out;
}

Rational PiecewiseCdf::support_inf() const {
  auto sup = support();
  if (sup.empty()) fail(Errc::InvalidCdf, "strategy with empty support");
  return sup.front().first;
}

Rational PiecewiseCdf::support_sup() const {
  auto sup = support();
  if (sup.empty()) fail(Errc::InvalidCdf, "strategy with empty support");
  return sup.back().second;
}

Rational PiecewiseCdf::segment_mass() const {
  if (segments_.empty()) return kZero;
  // Contiguity makes the telescoping sum Fbar(first lo) - Fbar(last hi).
  return segments_.front().value_at(segments_.front().xlo) -
         segments_.back().value_at(segments_.back().xhi);
}

StrategyProfile zero_profile(int sellers) {
  StrategyProfile p;
  for (int i = 0; i < sellers; ++i) p.cdfs.push_back(PiecewiseCdf::zero_price());
  return p;
}

Rational utility(const Network& net, int seller, const Rational& x, const StrategyProfile& prof) {
  if (prof.size() != net.size()) fail(Errc::MalformedInput, "profile size mismatch");
  Rational acc = net.alpha(seller);
  for (const auto& [j, beta] : net.neighbors(seller))
    acc += beta * prof.cdfs[j].eval(x, PiecewiseCdf::Value::Fbar);
  return x * acc;
}

Rational utility_lose_ties(const Network& net, int seller, const Rational& x,
                           const StrategyProfile& prof) {
  if (prof.size() != net.size()) fail(Errc::MalformedInput, "profile size mismatch");
  Rational acc = net.alpha(seller);
  for (const auto& [j, beta] : net.neighbors(seller))
    acc += beta * (Rational(1) - prof.cdfs[j].eval(x, PiecewiseCdf::Value::F));
  return x * acc;
}

std::vector<Rational> breakpoints(const StrategyProfile& prof) {
  std::vector<Rational> pts{Rational(1)};
  for (const auto& cdf : prof.cdfs) {
    for (const auto& s : cdf.segments()) {
      pts.push_back(s.xlo);
      pts.push_back(s.xhi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace bnet

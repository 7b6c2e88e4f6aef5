#include "bnet/simplex.hpp"

#include <algorithm>

#include "bnet/errors.hpp"

namespace bnet {

void RationalSimplex::add_row(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs,
                              std::string tag) {
  for (const auto& [v, c] : terms)
    if (v < 0 || v >= nvars_) fail(Errc::MalformedInput, "LP term references unknown variable");
  rows_.push_back(Row{std::move(terms), rel, std::move(rhs), std::move(tag)});
}

namespace {

struct Tableau {
  // body[i][j] for j < ncols, rhs in body[i][ncols]; objective in obj.
  std::vector<std::vector<Rational>> body;
  std::vector<Rational> obj;  // reduced costs, obj[ncols] = -objective value
  std::vector<int> basis;
  int ncols = 0;

  void pivot(int r, int c) {
    Rational p = body[r][c];
    for (auto& v : body[r]) v /= p;
    for (size_t i = 0; i < body.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      Rational f = body[i][c];
      if (f.is_zero()) continue;
      for (int j = 0; j <= ncols; ++j) body[i][j] -= f * body[r][j];
    }
    Rational f = obj[c];
    if (!f.is_zero())
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * body[r][j];
    basis[r] = c;
  }

  // Bland's rule over a fixed variable preference order (entering and the
  // leaving tie-break use the same order, which guarantees termination).
  // Returns true on optimality, false on unboundedness.
  bool run(const std::vector<int>& rank, const std::vector<char>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!allowed[j] || obj[j].sign() <= 0) continue;
        if (enter < 0 || rank[j] < rank[enter]) enter = j;
      }
      if (enter < 0) return true;

      int leave = -1;
      Rational best_ratio;
      for (size_t i = 0; i < body.size(); ++i) {
        if (body[i][enter].sign() <= 0) continue;
        Rational ratio = body[i][ncols] / body[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && rank[basis[i]] < rank[basis[leave]])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult RationalSimplex::maximize(const std::vector<std::pair<int, Rational>>& objective,
                                   PivotRule rule) const {
  const Rational zero(0), one(1);
  int m = static_cast<int>(rows_.size());

  // Normalized rows with nonnegative rhs.
  struct NRow {
    std::vector<Rational> coeff;
    Rel rel;
    Rational rhs;
  };
  std::vector<NRow> nrows(m);
  for (int i = 0; i < m; ++i) {
    NRow nr;
    nr.coeff.assign(nvars_, zero);
    for (const auto& [v, c] : rows_[i].terms) nr.coeff[v] += c;
    nr.rel = rows_[i].rel;
    nr.rhs = rows_[i].rhs;
    if (nr.rhs.sign() < 0) {
      for (auto& c : nr.coeff) c = -c;
      nr.rhs = -nr.rhs;
      if (nr.rel == Rel::Ge)
        nr.rel = Rel::Le;
      else if (nr.rel == Rel::Le)
        nr.rel = Rel::Ge;
    }
    nrows[i] = std::move(nr);
  }

  // Column layout: structural | slack/surplus | artificial.
  int nslack = 0;
  for (const auto& nr : nrows)
    if (nr.rel != Rel::Eq) ++nslack;
  int slack0 = nvars_;
  int art0 = nvars_ + nslack;
  int nart = 0;
  std::vector<int> art_row;  // artificial column -> row

  Tableau t;
  t.ncols = nvars_ + nslack + m;  // upper bound on artificials
  t.basis.assign(m, -1);
  t.body.assign(m, std::vector<Rational>(t.ncols + 1, zero));

  int next_slack = slack0;
  for (int i = 0; i < m; ++i) {
    auto& row = t.body[i];
    for (int j = 0; j < nvars_; ++j) row[j] = nrows[i].coeff[j];
    row[t.ncols] = nrows[i].rhs;
    if (nrows[i].rel == Rel::Le) {
      row[next_slack] = one;
      t.basis[i] = next_slack++;
    } else if (nrows[i].rel == Rel::Ge) {
      row[next_slack] = -one;
      ++next_slack;
    }
    if (t.basis[i] < 0) {
      int a = art0 + nart++;
      row[a] = one;
      t.basis[i] = a;
      art_row.push_back(i);
    }
  }
  int ncols_used = art0 + nart;

  // rank[j] = preference of variable j (lower enters first).
  std::vector<int> rank(t.ncols, 0);
  for (int j = 0; j < t.ncols; ++j)
    rank[j] = rule == PivotRule::BlandLow ? j : t.ncols - 1 - j;

  std::vector<char> allowed(t.ncols, 0);
  for (int j = 0; j < ncols_used; ++j) allowed[j] = 1;

  // Phase 1: maximize -(sum of artificials).
  t.obj.assign(t.ncols + 1, zero);
  for (int a = art0; a < art0 + nart; ++a) t.obj[a] = -one;
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] >= art0) {
      // Make the reduced cost of the basic artificial zero.
      for (int j = 0; j <= t.ncols; ++j) t.obj[j] += t.body[i][j];
    }
  }
  if (!t.run(rank, allowed)) fail(Errc::MalformedInput, "phase-1 LP unbounded");

  Rational phase1 = -t.obj[t.ncols];  // = max of -(sum art) negated twice
  if (phase1.sign() != 0) {
    // Infeasible: report rows whose artificial stayed positive.
    LpResult res;
    res.status = LpStatus::Infeasible;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= art0 && t.body[i][t.ncols].sign() > 0)
        res.infeasible_rows.push_back(rows_[i].tag);
    return res;
  }

  // Drive remaining zero-valued artificials out of the basis where possible.
  for (int i = 0; i < m; ++i) {
    if (t.basis[i] < art0) continue;
    int c = -1;
    for (int j = 0; j < art0; ++j)
      if (t.body[i][j].sign() != 0) {
        c = j;
        break;
      }
    if (c >= 0) t.pivot(i, c);
  }
  // Forbid artificials from re-entering.
  for (int a = art0; a < art0 + nart; ++a) allowed[a] = 0;

  // Phase 2.
  t.obj.assign(t.ncols + 1, zero);
  for (const auto& [v, c] : objective) t.obj[v] += c;
  for (int i = 0; i < m; ++i) {
    Rational cb = t.obj[t.basis[i]];
    if (cb.is_zero()) continue;
    for (int j = 0; j <= t.ncols; ++j) t.obj[j] -= cb * t.body[i][j];
  }
  if (!t.run(rank, allowed)) {
    LpResult res;
    res.status = LpStatus::Unbounded;
    return res;
  }

  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.assign(nvars_, zero);
  for (int i = 0; i < m; ++i)
    if (t.basis[i] < nvars_) res.x[t.basis[i]] = t.body[i][t.ncols];
  res.objective = zero;
  for (const auto& [v, c] : objective) res.objective += c * res.x[v];
  return res;
}

}  // namespace bnet

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bnet/rational.hpp"

namespace bnet {

enum class Rel { Eq, Ge, Le };

/// Bland's rule with two variable orders; both terminate, and comparing their
/// results detects whether an LP solution is pinned down uniquely.
enum class PivotRule { BlandLow, BlandHigh };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational objective;
  /// Tags of rows implicated in an infeasibility (artificials left positive).
  std::vector<std::string> infeasible_rows;
};

/// Exact two-phase simplex over the rationals.  All variables are >= 0.
/// Instances in this project are tiny (tens of variables), so exactness is
/// worth far more than speed.
class RationalSimplex {
 public:
  explicit RationalSimplex(int nvars) : nvars_(nvars) {}

  int num_vars() const { return nvars_; }

  void add_row(std::vector<std::pair<int, Rational>> terms, Rel rel, Rational rhs,
               std::string tag);

  std::vector<std::string> row_tags() const {
    std::vector<std::string> tags;
    for (const auto& r : rows_) tags.push_back(r.tag);
    return tags;
  }

  /// max objective . x  subject to the rows and x >= 0.
  LpResult maximize(const std::vector<std::pair<int, Rational>>& objective,
                    PivotRule rule = PivotRule::BlandLow) const;

 private:
  struct Row {
    std::vector<std::pair<int, Rational>> terms;
    Rel rel;
    Rational rhs;
    std::string tag;
  };

  int nvars_;
  std::vector<Row> rows_;
};

}  // namespace bnet

#include "bnet/sketch.hpp"

#include <algorithm>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

std::string point_tag(const char* kind, int seller, const Rational& t) {
  std::ostringstream os;
  os << kind << " seller=" << seller << " t=" << t;
  return os.str();
}

}  // namespace

Sketch::Sketch(const Network& net,
               std::vector<std::vector<std::pair<Rational, Rational>>> supports,
               std::set<int> atoms)
    : supports_(std::move(supports)), atoms_(std::move(atoms)) {
  if (static_cast<int>(supports_.size()) != net.size())
    fail(Errc::MalformedInput, "sketch support list does not match seller count");
  for (int i : atoms_)
    if (i < 0 || i >= net.size()) fail(Errc::MalformedInput, "atom seller out of range");
  for (int i : atoms_)
    for (const auto& [j, b] : net.neighbors(i))
      if (atoms_.count(j))
        fail(Errc::AdjacentAtoms, "no two sellers who share a market may both hold an atom at 1");

  for (auto& ivs : supports_) {
    std::sort(ivs.begin(), ivs.end());
    for (size_t k = 0; k < ivs.size(); ++k) {
      if (ivs[k].first.sign() <= 0 || ivs[k].second > kOne || !(ivs[k].first < ivs[k].second))
        fail(Errc::MalformedInput, "support intervals must satisfy 0 < lo < hi <= 1");
      if (k > 0 && !(ivs[k - 1].second < ivs[k].first)) {
        if (ivs[k - 1].second == ivs[k].first) {  // touching: merge
          ivs[k - 1].second = ivs[k].second;
          ivs.erase(ivs.begin() + static_cast<long>(k));
          --k;
        } else {
          fail(Errc::MalformedInput, "overlapping support intervals for one seller");
        }
      }
    }
  }

  for (const auto& ivs : supports_)
    for (const auto& [lo, hi] : ivs) {
      points_.push_back(lo);
      points_.push_back(hi);
    }
  if (!atoms_.empty()) points_.push_back(kOne);
  std::sort(points_.begin(), points_.end(), [](const Rational& a, const Rational& b) { return b < a; });
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());

  int k = static_cast<int>(points_.size());
  in_interval_.assign(std::max(0, k - 1), {});
  for (int j = 1; j < k; ++j) {
    const Rational& hi = points_[j - 1];  // t_j
    const Rational& lo = points_[j];      // t_{j+1}
    for (int i = 0; i < sellers(); ++i)
      for (const auto& [slo, shi] : supports_[i])
        if (slo <= lo && hi <= shi) in_interval_[j - 1].push_back(i);
  }

  seller_points_.assign(sellers(), {});
  for (int i = 0; i < sellers(); ++i) {
    for (int jt = 0; jt < k; ++jt) {
      bool inside = atoms_.count(i) && jt == 0;
      for (const auto& [slo, shi] : supports_[i])
        if (slo <= points_[jt] && points_[jt] <= shi) inside = true;
      if (inside) seller_points_[i].push_back(jt);
    }
  }
}

bool Sketch::in_interval(int seller, int j) const {
  const auto& v = in_interval_.at(j - 1);
  return std::find(v.begin(), v.end(), seller) != v.end();
}

Lp1 build_lp1(const Network& net, const Sketch& sketch) {
  int n = sketch.sellers();
  int k = sketch.k();
  if (k == 0) fail(Errc::EmptySketch, "sketch has no boundary points");
  if (sketch.boundary_points().front() != kOne)
    fail(Errc::MalformedInput, "equilibrium sketch must have t_1 = 1");
  if (sketch.boundary_points().back().sign() <= 0)
    fail(Errc::MalformedInput, "equilibrium sketch must have t_k > 0");

  Lp1 m{RationalSimplex(n + n * k + 1), n + n * k, {}, n, k};
  m.objective = {{m.var_s, kOne}};
  auto& lp = m.lp;
  const auto& T = sketch.boundary_points();

  // Utility rows: equality at boundary points inside the support, weak
  // dominance at the rest.
  for (int i = 0; i < n; ++i) {
    const auto& inside = sketch.seller_boundary()[i];
    for (int jt = 0; jt < k; ++jt) {
      const Rational& t = T[jt];
      std::vector<std::pair<int, Rational>> terms{{m.var_u(i), kOne}};
      for (const auto& [r, beta] : net.neighbors(i)) terms.emplace_back(m.var_fb(r, jt), -t * beta);
      bool in = std::binary_search(inside.begin(), inside.end(), jt);
      lp.add_row(std::move(terms), in ? Rel::Eq : Rel::Ge, t * net.alpha(i),
                 point_tag(in ? "eq-util" : "off-eq-util", i, t));
    }
  }

  // Everyone prices at or above the lowest boundary point.
  for (int i = 0; i < n; ++i)
    lp.add_row({{m.var_fb(i, k - 1), kOne}}, Rel::Eq, kOne, point_tag("starts-0", i, T[k - 1]));

  // Atom membership at t_1 = 1.
  for (int i = 0; i < n; ++i) {
    if (sketch.atoms().count(i))
      lp.add_row({{m.var_fb(i, 0), kOne}, {m.var_s, -kOne}}, Rel::Ge, kZero,
                 point_tag("yes-atom", i, kOne));
    else
      lp.add_row({{m.var_fb(i, 0), kOne}}, Rel::Eq, kZero, point_tag("no-atom", i, kOne));
  }

  // Flat outside the support, strictly decreasing inside.
  for (int j = 1; j < k; ++j) {
    for (int i = 0; i < n; ++i) {
      if (sketch.in_interval(i, j))
        lp.add_row({{m.var_fb(i, j), kOne}, {m.var_fb(i, j - 1), -kOne}, {m.var_s, -kOne}},
                   Rel::Ge, kZero, point_tag("CDF-mon", i, T[j]));
      else
        lp.add_row({{m.var_fb(i, j), kOne}, {m.var_fb(i, j - 1), -kOne}}, Rel::Eq, kZero,
                   point_tag("out-support", i, T[j]));
    }
  }

  lp.add_row({{m.var_s, kOne}}, Rel::Le, kOne, "slack-cap");
  return m;
}

SketchSolveOutcome solve_sketch(const Network& net, const Sketch& sketch, PivotRule rule) {
  Lp1 m = build_lp1(net, sketch);
  LpResult lp = m.lp.maximize(m.objective, rule);

  SketchSolveOutcome out;
  if (lp.status == LpStatus::Infeasible) {
    out.violated_constraints = lp.infeasible_rows;
    return out;
  }
  if (lp.status != LpStatus::Optimal) {
    out.violated_constraints.push_back("LP unbounded (malformed sketch)");
    return out;
  }

  int n = m.n, k = m.k;
  std::vector<std::vector<Rational>> fb(n, std::vector<Rational>(k, kZero));
  for (int i = 0; i < n; ++i)
    for (int jt = 0; jt < k; ++jt) fb[i][jt] = lp.x[m.var_fb(i, jt)];

  if (lp.objective.sign() <= 0) {
    // The weak system is satisfiable but some strict constraint can only be
    // met with equality; name the tight ones.
    for (int i : sketch.atoms())
      if (fb[i][0].sign() <= 0) out.violated_constraints.push_back(point_tag("yes-atom", i, kOne));
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < n; ++i)
        if (sketch.in_interval(i, j) && fb[i][j] <= fb[i][j - 1])
          out.violated_constraints.push_back(
              point_tag("CDF-mon", i, sketch.boundary_points()[j]));
    if (out.violated_constraints.empty())
      out.violated_constraints.push_back("strict constraints admit no positive slack");
    return out;
  }

  out.feasible = true;
  out.solution.sketch = sketch;
  out.solution.fbar = std::move(fb);
  out.solution.utilities.assign(n, kZero);
  for (int i = 0; i < n; ++i) out.solution.utilities[i] = lp.x[m.var_u(i)];
  out.solution.min_slack = lp.objective;
  out.solution.unique = check_full_rank(net, sketch);
  out.solution.exact = true;
  return out;
}

bool check_full_rank(const Network& net, const Sketch& sketch) {
  for (int j = 1; j < sketch.k(); ++j) {
    const auto& group = sketch.interval_sellers()[j - 1];
    int s = static_cast<int>(group.size());
    if (s == 0) continue;
    std::vector<std::vector<Rational>> mat(s, std::vector<Rational>(s, kZero));
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        if (a != b)
          if (auto beta = net.beta(group[a], group[b])) mat[a][b] = *beta;

    // Gaussian elimination; singular iff some pivot column is all zero.
    bool singular = false;
    for (int col = 0; col < s && !singular; ++col) {
      int piv = -1;
      for (int row = col; row < s; ++row)
        if (!mat[row][col].is_zero()) {
          piv = row;
          break;
        }
      if (piv < 0) {
        singular = true;
        break;
      }
      std::swap(mat[col], mat[piv]);
      for (int row = col + 1; row < s; ++row) {
        if (mat[row][col].is_zero()) continue;
        Rational f = mat[row][col] / mat[col][col];
        for (int c2 = col; c2 < s; ++c2) mat[row][c2] -= f * mat[col][c2];
      }
    }
    if (singular) return false;
  }
  return true;
}

StrategyProfile sketch_solution_to_profile(const SketchSolution& ss) {
  const Sketch& sk = ss.sketch;
  const auto& T = sk.boundary_points();
  int n = sk.sellers();
  int k = sk.k();

  StrategyProfile prof;
  for (int i = 0; i < n; ++i) {
    Rational atom = sk.atoms().count(i) ? ss.fbar[i][0] : kZero;
    std::vector<CdfSegment> segs;
    for (int j = k - 1; j >= 1; --j) {
      const Rational& lo = T[j];
      const Rational& hi = T[j - 1];
      const Rational& vlo = ss.fbar[i][j];
      const Rational& vhi = ss.fbar[i][j - 1];
      CdfSegment seg;
      seg.xlo = lo;
      seg.xhi = hi;
      if (sk.in_interval(i, j)) {
        if (vlo < vhi)
          fail(Errc::InterpolationNotMonotone,
               point_tag("Fbar increases across in-support interval", i, lo));
        // a + b/x through (lo, vlo) and (hi, vhi).
        seg.b = (vhi - vlo) / (kOne / hi - kOne / lo);
        seg.a = vhi - seg.b / hi;
      } else {
        if (vlo != vhi)
          fail(Errc::InterpolationNotMonotone,
               point_tag("Fbar changes across off-support interval", i, lo));
        seg.a = vlo;
        seg.b = kZero;
      }
      segs.push_back(std::move(seg));
    }

    // Trim constant padding: Fbar = 1 below the support, terminal value above.
    size_t first = 0;
    while (first < segs.size() && segs[first].b.is_zero() && segs[first].a == kOne) ++first;
    size_t last = segs.size();
    while (last > first && segs[last - 1].b.is_zero() && segs[last - 1].a == atom) --last;
    std::vector<CdfSegment> kept(segs.begin() + static_cast<long>(first),
                                 segs.begin() + static_cast<long>(last));
    // Merge adjacent pieces that share the same linear form.
    std::vector<CdfSegment> merged;
    for (auto& s : kept) {
      if (!merged.empty() && merged.back().a == s.a && merged.back().b == s.b &&
          merged.back().xhi == s.xlo)
        merged.back().xhi = s.xhi;
      else
        merged.push_back(std::move(s));
    }
    prof.cdfs.emplace_back(std::move(merged), atom);
  }
  return prof;
}

SketchSolution solution_from_masses(const Network& net, const Sketch& sketch,
                                    const std::vector<std::vector<Rational>>& interval_mass,
                                    const std::vector<Rational>& atom_mass,
                                    std::vector<Rational> utilities) {
  int n = sketch.sellers();
  int k = sketch.k();
  if (static_cast<int>(interval_mass.size()) != n || static_cast<int>(atom_mass.size()) != n)
    fail(Errc::MalformedInput, "mass table does not match seller count");

  SketchSolution ss;
  ss.sketch = sketch;
  ss.utilities = std::move(utilities);
  ss.fbar.assign(n, std::vector<Rational>(k, kZero));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(interval_mass[i].size()) != k - 1)
      fail(Errc::MalformedInput, "mass row does not match interval count");
    Rational acc = atom_mass[i];
    ss.fbar[i][0] = acc;
    for (int j = 1; j < k; ++j) {
      acc += interval_mass[i][j - 1];
      ss.fbar[i][j] = acc;
    }
    if (ss.fbar[i][k - 1] != kOne)
      fail(Errc::MalformedInput, "masses of one seller do not sum to 1");
  }
  ss.min_slack = kZero;
  ss.unique = check_full_rank(net, sketch);
  ss.exact = true;
  return ss;
}

}  // namespace bnet

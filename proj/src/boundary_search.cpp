#include "bnet/boundary_search.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

struct System {
  const Network* net;
  const FreeBoundarySketch* fbs;
  int n, k;
  std::vector<std::vector<char>> member;     // member[i][j-1]: i in R_j
  std::vector<std::vector<char>> at_point;   // at_point[i][jt]: jt in T_i

  int num_equations() const {
    int m = 0;
    for (int i = 0; i < n; ++i)
      for (int jt = 0; jt < k; ++jt) m += at_point[i][jt] ? 1 : 0;
    m += n;                                  // starts-0
    m += n - static_cast<int>(fbs->atoms.size());  // no-atom
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < n; ++i) m += member[i][j - 1] ? 0 : 1;
    return m;
  }
};

System make_system(const Network& net, const FreeBoundarySketch& fbs) {
  int n = net.size();
  int k = fbs.k;
  if (k < 2) fail(Errc::EmptySketch, "free-boundary sketch needs at least two boundary points");
  if (static_cast<int>(fbs.interval_sellers.size()) != k - 1)
    fail(Errc::MalformedInput, "interval seller sets must cover exactly k-1 intervals");

  System sys{&net, &fbs, n, k, {}, {}};
  sys.member.assign(n, std::vector<char>(k - 1, 0));
  for (int j = 1; j < k; ++j) {
    if (fbs.interval_sellers[j - 1].empty())
      fail(Errc::MalformedInput, "empty interval seller set R_" + std::to_string(j));
    for (int i : fbs.interval_sellers[j - 1]) {
      if (i < 0 || i >= n) fail(Errc::MalformedInput, "seller index out of range in R_j");
      sys.member[i][j - 1] = 1;
    }
  }
  for (int j = 1; j + 1 < k; ++j)
    if (fbs.interval_sellers[j - 1] == fbs.interval_sellers[j])
      fail(Errc::MalformedInput, "adjacent intervals with identical seller sets");
  for (int i : fbs.atoms) {
    if (i < 0 || i >= n) fail(Errc::MalformedInput, "atom seller out of range");
    for (const auto& [j, b] : net.neighbors(i))
      if (fbs.atoms.count(j)) fail(Errc::AdjacentAtoms, "adjacent sellers both holding an atom");
  }

  sys.at_point.assign(n, std::vector<char>(k, 0));
  for (int i = 0; i < n; ++i) {
    if (fbs.atoms.count(i)) sys.at_point[i][0] = 1;
    for (int j = 1; j < k; ++j)
      if (sys.member[i][j - 1]) {
        sys.at_point[i][j - 1] = 1;
        sys.at_point[i][j] = 1;
      }
  }
  for (int i = 0; i < n; ++i) {
    bool anywhere = fbs.atoms.count(i) > 0;
    for (int j = 1; j < k && !anywhere; ++j) anywhere = sys.member[i][j - 1];
    if (!anywhere)
      fail(Errc::MalformedInput, "seller " + std::to_string(i) + " appears in no interval or atom set");
  }
  return sys;
}

// For a fixed boundary vector t the equality system is linear in y =
// (Fbar values, utilities): assemble A(t) y = b(t).
void assemble_linear(const System& sys, const std::vector<double>& t, Eigen::MatrixXd& a,
                     Eigen::VectorXd& b) {
  const Network& net = *sys.net;
  int ydim = sys.n * sys.k + sys.n;
  int m = sys.num_equations();
  a.setZero(m, ydim);
  b.setZero(m);
  auto yfb = [&](int i, int jt) { return i * sys.k + jt; };
  auto yu = [&](int i) { return sys.n * sys.k + i; };

  int row = 0;
  for (int i = 0; i < sys.n; ++i)
    for (int jt = 0; jt < sys.k; ++jt) {
      if (!sys.at_point[i][jt]) continue;
      a(row, yu(i)) = 1.0;
      for (const auto& [nb, beta] : net.neighbors(i))
        a(row, yfb(nb, jt)) -= t[jt] * beta.to_double();
      b(row) = t[jt] * net.alpha(i).to_double();
      ++row;
    }
  for (int i = 0; i < sys.n; ++i) {
    a(row, yfb(i, sys.k - 1)) = 1.0;
    b(row) = 1.0;
    ++row;
  }
  for (int i = 0; i < sys.n; ++i) {
    if (sys.fbs->atoms.count(i)) continue;
    a(row, yfb(i, 0)) = 1.0;
    ++row;
  }
  for (int j = 1; j < sys.k; ++j)
    for (int i = 0; i < sys.n; ++i) {
      if (sys.member[i][j - 1]) continue;
      a(row, yfb(i, j - 1)) = 1.0;
      a(row, yfb(i, j)) = -1.0;
      ++row;
    }
}

// Residual of the projected problem: solve the linear part for the best y
// at this t and report A y - b.
Eigen::VectorXd projected_residual(const System& sys, const std::vector<double>& t,
                                   Eigen::VectorXd* y_out) {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  assemble_linear(sys, t, a, b);
  Eigen::VectorXd y = a.colPivHouseholderQr().solve(b);
  if (y_out) *y_out = y;
  return a * y - b;
}

// Gauss-Newton with a Levenberg damping term over the free boundary points
// only; the (Fbar, u) block is eliminated exactly at every step.
bool lm_solve(const System& sys, std::vector<double>& t, Eigen::VectorXd& y, int max_iter,
              double tol, double* out_res) {
  int dim = sys.k - 1;
  double lambda = 1e-4;
  Eigen::VectorXd r = projected_residual(sys, t, &y);
  for (int it = 0; it < max_iter; ++it) {
    double rn = r.lpNorm<Eigen::Infinity>();
    if (rn < tol) {
      *out_res = rn;
      return true;
    }
    // Numerical Jacobian of the projected residual in the t coordinates.
    Eigen::MatrixXd jac(r.size(), dim);
    for (int j = 1; j < sys.k; ++j) {
      double h = 1e-7 * std::max(1.0, std::fabs(t[j]));
      std::vector<double> tp = t;
      tp[j] += h;
      jac.col(j - 1) = (projected_residual(sys, tp, nullptr) - r) / h;
    }
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    Eigen::VectorXd jtr = jac.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 15; ++tries) {
      Eigen::MatrixXd m = jtj + lambda * Eigen::MatrixXd::Identity(dim, dim);
      Eigen::VectorXd delta = m.ldlt().solve(-jtr);
      std::vector<double> tn = t;
      for (int j = 1; j < sys.k; ++j)
        tn[j] = std::clamp(t[j] + delta[j - 1], 1e-6, 1.0 - 1e-9);
      Eigen::VectorXd yn;
      Eigen::VectorXd rn2 = projected_residual(sys, tn, &yn);
      if (rn2.squaredNorm() < r.squaredNorm()) {
        t = tn;
        r = rn2;
        y = yn;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;
  }
  *out_res = r.lpNorm<Eigen::Infinity>();
  return *out_res < tol;
}

struct Candidate {
  std::vector<Rational> p, u;
  std::vector<std::vector<Rational>> fb;
  bool exact = false;
};

// Exact re-check of every equality at rational values.
bool equalities_hold(const System& sys, const Candidate& c) {
  const Network& net = *sys.net;
  for (int i = 0; i < sys.n; ++i)
    for (int jt = 0; jt < sys.k; ++jt) {
      if (!sys.at_point[i][jt]) continue;
      Rational acc = net.alpha(i);
      for (const auto& [nb, beta] : net.neighbors(i)) acc += beta * c.fb[nb][jt];
      if (c.u[i] != c.p[jt] * acc) return false;
    }
  for (int i = 0; i < sys.n; ++i) {
    if (c.fb[i][sys.k - 1] != kOne) return false;
    if (!sys.fbs->atoms.count(i) && !c.fb[i][0].is_zero()) return false;
  }
  for (int j = 1; j < sys.k; ++j)
    for (int i = 0; i < sys.n; ++i)
      if (!sys.member[i][j - 1] && c.fb[i][j - 1] != c.fb[i][j]) return false;
  return true;
}

// Strict constraints and off-support dominance; eps = 0 for exact candidates.
std::vector<std::string> check_candidate(const System& sys, const Candidate& c, double eps) {
  std::vector<std::string> bad;
  const Network& net = *sys.net;
  Rational tol = Rational::from_double(eps);

  auto flag = [&](const std::string& s) { bad.push_back(s); };
  for (int jt = 0; jt + 1 < sys.k; ++jt)
    if (!(c.p[jt + 1] < c.p[jt] - tol))
      flag("boundary points not strictly decreasing at index " + std::to_string(jt + 1));
  if (!(c.p[sys.k - 1] > tol)) flag("lowest boundary point not positive");

  for (int i = 0; i < sys.n; ++i) {
    if (sys.fbs->atoms.count(i) && !(c.fb[i][0] > tol))
      flag("yes-atom violated for seller " + std::to_string(i));
    for (int jt = 0; jt < sys.k; ++jt)
      if (c.fb[i][jt] < -tol || c.fb[i][jt] > kOne + tol)
        flag("Fbar outside [0,1] for seller " + std::to_string(i));
    for (int j = 1; j < sys.k; ++j)
      if (sys.member[i][j - 1] && !(c.fb[i][j] > c.fb[i][j - 1] + tol))
        flag("CDF-mon violated for seller " + std::to_string(i) + " on interval " +
             std::to_string(j));
  }
  for (int i = 0; i < sys.n; ++i)
    for (int jt = 0; jt < sys.k; ++jt) {
      if (sys.at_point[i][jt]) continue;
      Rational acc = net.alpha(i);
      for (const auto& [nb, beta] : net.neighbors(i)) acc += beta * c.fb[nb][jt];
      if (c.u[i] < c.p[jt] * acc - tol) {
        std::ostringstream os;
        os << "off-support dominance violated: seller " << i << " gains "
           << (c.p[jt] * acc - c.u[i]).to_double() << " at t index " << jt;
        flag(os.str());
      }
    }
  return bad;
}

Candidate extract(const System& sys, const std::vector<double>& t, const Eigen::VectorXd& y,
                  unsigned long snap_den) {
  auto yfb = [&](int i, int jt) { return i * sys.k + jt; };
  auto yu = [&](int i) { return sys.n * sys.k + i; };

  // First try the exact rational snap of every coordinate.
  Candidate snap;
  snap.exact = true;
  snap.p.resize(sys.k);
  snap.p[0] = kOne;
  bool ok = true;
  auto snap_val = [&](double v) -> Rational {
    auto r = Rational::nearest(v, snap_den);
    if (!r) ok = false;
    return r.value_or(kZero);
  };
  for (int jt = 1; jt < sys.k && ok; ++jt) snap.p[jt] = snap_val(t[jt]);
  snap.fb.assign(sys.n, std::vector<Rational>(sys.k, kZero));
  for (int i = 0; i < sys.n && ok; ++i)
    for (int jt = 0; jt < sys.k && ok; ++jt) snap.fb[i][jt] = snap_val(y[yfb(i, jt)]);
  snap.u.resize(sys.n);
  for (int i = 0; i < sys.n && ok; ++i) snap.u[i] = snap_val(y[yu(i)]);
  if (ok && equalities_hold(sys, snap)) return snap;

  // Keep the float root as exact dyadic values, with the structurally-known
  // coordinates repaired exactly: Fbar = 1 at the lowest point, constant
  // across off-support intervals, and identically 0 above an atomless
  // seller's support.  Each repair moves a value by at most the residual.
  Candidate c;
  c.exact = false;
  c.p.resize(sys.k);
  c.p[0] = kOne;
  for (int jt = 1; jt < sys.k; ++jt) c.p[jt] = Rational::from_double(t[jt]);
  c.fb.assign(sys.n, std::vector<Rational>(sys.k, kZero));
  for (int i = 0; i < sys.n; ++i)
    for (int jt = 0; jt < sys.k; ++jt) c.fb[i][jt] = Rational::from_double(y[yfb(i, jt)]);
  c.u.resize(sys.n);
  for (int i = 0; i < sys.n; ++i) c.u[i] = Rational::from_double(y[yu(i)]);

  for (int i = 0; i < sys.n; ++i) {
    c.fb[i][sys.k - 1] = kOne;
    for (int j = sys.k - 1; j >= 1; --j)
      if (!sys.member[i][j - 1]) c.fb[i][j - 1] = c.fb[i][j];
    if (!sys.fbs->atoms.count(i)) {
      int top = sys.k - 1;  // index of the support's supremum
      for (int j = 1; j < sys.k; ++j)
        if (sys.member[i][j - 1]) {
          top = j - 1;
          break;
        }
      for (int jt = 0; jt <= top; ++jt) c.fb[i][jt] = kZero;
    }
  }
  return c;
}

SketchSolution to_solution(const System& sys, const Candidate& c) {
  const FreeBoundarySketch& fbs = *sys.fbs;
  std::vector<std::vector<std::pair<Rational, Rational>>> supports(sys.n);
  for (int i = 0; i < sys.n; ++i) {
    int run_start = -1;
    for (int j = 1; j <= sys.k; ++j) {
      bool in = j < sys.k && sys.member[i][j - 1];
      if (in && run_start < 0) run_start = j;
      if (!in && run_start >= 0) {
        supports[i].emplace_back(c.p[j - 1], c.p[run_start - 1]);
        run_start = -1;
      }
    }
    std::sort(supports[i].begin(), supports[i].end());
  }
  Sketch sk(*sys.net, supports, fbs.atoms);
  if (sk.k() != sys.k)
    fail(Errc::ConstructionBroken, "rebuilt sketch has a different boundary-point count");

  SketchSolution ss;
  ss.sketch = sk;
  ss.fbar = c.fb;
  ss.utilities = c.u;
  ss.exact = c.exact;
  ss.unique = check_full_rank(*sys.net, sk);
  Rational slack(1);
  for (int i : fbs.atoms) slack = min(slack, c.fb[i][0]);
  for (int j = 1; j < sys.k; ++j)
    for (int i = 0; i < sys.n; ++i)
      if (sys.member[i][j - 1]) slack = min(slack, c.fb[i][j] - c.fb[i][j - 1]);
  ss.min_slack = slack;
  return ss;
}

}  // namespace

BoundarySearchResult solve_free_boundaries(const Network& net, const FreeBoundarySketch& fbs,
                                           const SearchOptions& opt) {
  System sys = make_system(net, fbs);
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::uniform_real_distribution<double> broad(0.05, 0.995);

  std::vector<double> base_t(sys.k - 1);
  if (opt.initial_t && static_cast<int>(opt.initial_t->size()) == sys.k - 1) {
    base_t = *opt.initial_t;
  } else {
    for (int j = 1; j < sys.k; ++j)
      base_t[j - 1] = std::pow(0.5, static_cast<double>(j) / static_cast<double>(sys.k - 1));
  }

  BoundarySearchResult best;
  best.status = SearchStatus::NoConvergence;

  for (int attempt = 0; attempt <= opt.max_restarts; ++attempt) {
    // Seed schedule: the base guess, then alternating +-20% jitters of the
    // base and fully resampled descending vectors (the equality system can
    // have several roots, so narrow restarts are not enough).
    std::vector<double> t(sys.k, 1.0);
    for (int j = 1; j < sys.k; ++j) {
      double v = base_t[j - 1];
      if (attempt > 0 && attempt % 2 == 1) v *= 1.0 + jitter(rng);
      if (attempt > 0 && attempt % 2 == 0) v = broad(rng);
      t[j] = std::clamp(v, 1e-3, 0.999);
    }
    std::sort(t.begin() + 1, t.end(), std::greater<double>());

    double res = 0.0;
    Eigen::VectorXd y;
    if (!lm_solve(sys, t, y, opt.max_iterations, opt.residual_tol, &res)) continue;

    Candidate c = extract(sys, t, y, opt.snap_max_den);
    auto violations = check_candidate(sys, c, c.exact ? 0.0 : 1e-9);
    if (violations.empty()) {
      BoundarySearchResult r;
      r.status = SearchStatus::Converged;
      r.solution = to_solution(sys, c);
      r.residual = res;
      r.attempts = attempt + 1;
      return r;
    }
    if (best.status == SearchStatus::NoConvergence) {
      // Record the failing root when it is still a representable sketch
      // (roots with collapsed or crossing boundary points are not).
      try {
        best.solution = to_solution(sys, c);
        best.status = SearchStatus::StrictViolated;
        best.residual = res;
        best.violations = std::move(violations);
      } catch (const Error&) {
      }
    }
    best.attempts = attempt + 1;
  }
  if (best.status == SearchStatus::NoConvergence) best.attempts = opt.max_restarts + 1;
  return best;
}

}  // namespace bnet

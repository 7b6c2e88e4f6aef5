#include "bnet/closed_form.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <string>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

Rational min_strict_slack(const SketchSolution& ss) {
  Rational slack(1);
  bool any = false;
  for (int i : ss.sketch.atoms()) {
    slack = any ? min(slack, ss.fbar[i][0]) : ss.fbar[i][0];
    any = true;
  }
  for (int j = 1; j < ss.sketch.k(); ++j)
    for (int i : ss.sketch.interval_sellers()[j - 1]) {
      Rational gap = ss.fbar[i][j] - ss.fbar[i][j - 1];
      slack = any ? min(slack, gap) : gap;
      any = true;
    }
  return any ? slack : kOne;
}

}  // namespace

TwoSellerSolution solve_two_sellers(const Rational& alpha1, const Rational& alpha2,
                                    const Rational& beta) {
  if (alpha2.sign() < 0 || alpha1 < alpha2)
    fail(Errc::MalformedInput, "two-seller solver expects alpha1 >= alpha2 >= 0");
  if (beta.sign() <= 0) fail(Errc::MalformedInput, "shared market must be positive");

  TwoSellerSolution sol;
  if (alpha1.is_zero()) {
    // Pure Bertrand competition: both price at 0.
    sol.t2 = kZero;
    sol.atom = kZero;
    sol.utilities = {kZero, kZero};
    sol.profile = zero_profile(2);
    return sol;
  }

  sol.t2 = alpha1 / (alpha1 + beta);
  sol.atom = (sol.t2 * (alpha2 + beta) - alpha2) / beta;
  sol.utilities = {alpha1, sol.t2 * (alpha2 + beta)};

  // Fbar_1(x) = (t2 (alpha2+beta)/x - alpha2) / beta, Fbar_2(x) = alpha1/beta (1/x - 1).
  std::vector<CdfSegment> s1{{sol.t2, kOne, -alpha2 / beta, sol.t2 * (alpha2 + beta) / beta}};
  std::vector<CdfSegment> s2{{sol.t2, kOne, -alpha1 / beta, alpha1 / beta}};
  sol.profile.cdfs.emplace_back(std::move(s1), sol.atom);
  sol.profile.cdfs.emplace_back(std::move(s2), kZero);
  return sol;
}

Line3Solution solve_line3(const Rational& alpha1, const Rational& beta12, const Rational& beta23) {
  if (alpha1.sign() <= 0 || beta12.sign() <= 0 || beta23.sign() <= 0)
    fail(Errc::MalformedInput, "line-3 solver expects positive alpha1, beta12, beta23");

  Line3Solution sol;
  sol.fbar2_at_t2 = beta12 / (beta12 + beta23);
  sol.t2 = alpha1 / (alpha1 + beta12 * sol.fbar2_at_t2);
  sol.t3 = sol.t2 * sol.fbar2_at_t2;
  sol.atom1 = sol.t2;
  sol.utilities = {alpha1, sol.t2 * beta12, sol.t3 * beta23};

  Network net(3);
  net.set_alpha(0, alpha1);
  net.add_edge(0, 1, beta12);
  net.add_edge(1, 2, beta23);
  Sketch sk(net,
            {{{sol.t2, kOne}}, {{sol.t3, kOne}}, {{sol.t3, sol.t2}}},
            {0});

  SketchSolution ss;
  ss.sketch = sk;
  // T = {1, t2, t3}.
  ss.fbar = {{sol.t2, kOne, kOne}, {kZero, sol.fbar2_at_t2, kOne}, {kZero, kZero, kOne}};
  ss.utilities = sol.utilities;
  ss.min_slack = min_strict_slack(ss);
  ss.unique = check_full_rank(net, sk);
  sol.profile = sketch_solution_to_profile(ss);
  return sol;
}

namespace {

struct RootedTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> bottom_up;  // deepest first
};

RootedTree root_tree(const Network& net, int root) {
  int n = net.size();
  if (static_cast<int>(net.edges().size()) != n - 1 || !net.connected())
    fail(Errc::NotATree, "network is not a tree");
  RootedTree t;
  t.parent.assign(n, -1);
  t.children.resize(n);
  std::deque<int> queue{root};
  std::vector<char> seen(n, 0);
  seen[root] = 1;
  std::vector<int> order;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    order.push_back(v);
    for (const auto& [w, b] : net.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        t.parent[w] = v;
        t.children[v].push_back(w);
        queue.push_back(w);
      }
  }
  t.bottom_up.assign(order.rbegin(), order.rend());
  return t;
}

}  // namespace

TreeSolution solve_tree_single_captive(const Network& net, int root) {
  int n = net.size();
  if (root < 0 || root >= n) fail(Errc::MalformedInput, "root index out of range");
  if (net.alpha(root).sign() <= 0)
    fail(Errc::MalformedInput, "tree solver needs a captive market at the root");
  for (int i = 0; i < n; ++i)
    if (i != root && net.alpha(i).sign() > 0)
      fail(Errc::MultipleCaptive, "tree solver handles exactly one captive market");

  TreeSolution sol;
  if (n == 1) {
    sol.intervals = TreeIntervals{0, {-1}, {kOne}, {kOne}, {kOne}, {kOne}};
    sol.utilities = {net.alpha(0)};
    Sketch sk(net, {{}}, {0});
    sol.sketch_solution.sketch = sk;
    sol.sketch_solution.fbar = {{kOne}};
    sol.sketch_solution.utilities = sol.utilities;
    sol.sketch_solution.min_slack = kOne;
    sol.sketch_solution.unique = true;
    sol.profile.cdfs.push_back(PiecewiseCdf::point_mass_at_one());
    return sol;
  }

  RootedTree tree = root_tree(net, root);
  TreeIntervals iv;
  iv.root = root;
  iv.parent = tree.parent;
  iv.low.assign(n, kZero);
  iv.mid.assign(n, kZero);
  iv.high.assign(n, kZero);
  iv.fbar_at_mid.assign(n, kZero);

  // Bottom-up: Fbar_v(M_v) from the children's values.
  for (int v : tree.bottom_up) {
    if (tree.children[v].empty()) {
      iv.fbar_at_mid[v] = kOne;
      continue;
    }
    Rational child_sum(0);
    for (int c : tree.children[v]) child_sum += *net.beta(c, v) * iv.fbar_at_mid[c];
    if (v == root)
      iv.fbar_at_mid[v] = net.alpha(v) / (net.alpha(v) + child_sum);
    else
      iv.fbar_at_mid[v] = *net.beta(v, tree.parent[v]) / (*net.beta(v, tree.parent[v]) + child_sum);
  }

  // Top-down: midpoints are products of ancestor Fbar values.
  iv.mid[root] = kOne;
  for (auto it = tree.bottom_up.rbegin(); it != tree.bottom_up.rend(); ++it) {
    int v = *it;
    if (v != root) iv.mid[v] = iv.mid[tree.parent[v]] * iv.fbar_at_mid[tree.parent[v]];
  }
  for (int v = 0; v < n; ++v) {
    iv.high[v] = v == root ? kOne : iv.mid[tree.parent[v]];
    iv.low[v] = tree.children[v].empty() ? iv.mid[v] : iv.mid[v] * iv.fbar_at_mid[v];
  }

  sol.intervals = iv;
  sol.utilities.assign(n, kZero);
  for (int v = 0; v < n; ++v)
    sol.utilities[v] =
        v == root ? net.alpha(root) : iv.mid[v] * (*net.beta(v, tree.parent[v]));

  // CDFs via the induced sketch.
  std::vector<std::vector<std::pair<Rational, Rational>>> supports(n);
  for (int v = 0; v < n; ++v) supports[v] = {{iv.low[v], iv.high[v]}};
  Sketch sk(net, supports, {root});
  auto outcome = solve_sketch(net, sk);
  if (!outcome.feasible)
    fail(Errc::ConstructionBroken, "tree sketch unexpectedly infeasible");
  for (int v = 0; v < n; ++v)
    if (outcome.solution.utilities[v] != sol.utilities[v])
      fail(Errc::ConstructionBroken, "tree sketch utilities disagree with the recursion");
  sol.sketch_solution = outcome.solution;
  sol.profile = sketch_solution_to_profile(sol.sketch_solution);
  return sol;
}

TreeSolution solve_line_single_captive(const Network& net) {
  int n = net.size();
  int captive = -1;
  for (int i = 0; i < n; ++i)
    if (net.alpha(i).sign() > 0) {
      if (captive >= 0) fail(Errc::MultipleCaptive, "line solver handles one captive market");
      captive = i;
    }
  if (captive < 0) fail(Errc::MalformedInput, "line solver needs a captive market");
  if (n == 1) return solve_tree_single_captive(net, captive);

  if (static_cast<int>(net.edges().size()) != n - 1 || !net.connected())
    fail(Errc::NotALine, "network is not a path");
  for (int i = 0; i < n; ++i)
    if (net.neighbors(i).size() > 2) fail(Errc::NotALine, "network is not a path");
  if (net.neighbors(captive).size() != 1)
    fail(Errc::NotALine, "captive market must sit at an endpoint of the path");

  TreeSolution sol = solve_tree_single_captive(net, captive);

  // The line sketch has S_{i_k} = [t_{k+1}, t_{k-1}] and only i_1 in R_0.
  std::vector<int> chain{captive};
  std::vector<char> seen(n, 0);
  seen[captive] = 1;
  while (static_cast<int>(chain.size()) < n) {
    int v = chain.back();
    for (const auto& [w, b] : net.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        chain.push_back(w);
        break;
      }
  }
  for (int k = 0; k < n; ++k) {
    int v = chain[k];
    const Rational& t_km1 = k == 0 ? kOne : sol.intervals.mid[chain[k - 1]];
    const Rational& t_kp1 = k + 1 < n ? sol.intervals.mid[chain[k + 1]] : sol.intervals.mid[v];
    if (sol.intervals.high[v] != t_km1 || sol.intervals.low[v] != t_kp1)
      fail(Errc::ConstructionBroken, "line equilibrium lacks the staggered chain shape");
  }
  return sol;
}

StarSolution solve_star(const Rational& alpha0, const std::vector<Rational>& peripheral_alpha) {
  int n = static_cast<int>(peripheral_alpha.size());
  if (n < 1) fail(Errc::MalformedInput, "star needs at least one peripheral seller");
  if (alpha0.sign() <= 0) fail(Errc::MalformedInput, "star center needs a captive market");
  for (const auto& a : peripheral_alpha)
    if (a.sign() <= 0) fail(Errc::MalformedInput, "star peripherals need captive markets");

  StarSolution sol;
  sol.order.resize(n);
  std::iota(sol.order.begin(), sol.order.end(), 0);
  std::sort(sol.order.begin(), sol.order.end(),
            [&](int a, int b) { return peripheral_alpha[b] < peripheral_alpha[a]; });
  for (int r = 0; r + 1 < n; ++r)
    if (peripheral_alpha[sol.order[r]] == peripheral_alpha[sol.order[r + 1]])
      fail(Errc::NonGeneric, "tied peripheral captive markets");

  // a[r] = alpha of the rank-r peripheral, r = 1..n descending.
  std::vector<Rational> a(n + 1, kZero);
  for (int r = 1; r <= n; ++r) a[r] = peripheral_alpha[sol.order[r - 1]];

  // Recurrence: Fbar_0(b_n) = 1, Fbar_0(b_{i-1}) = Fbar_0(b_i) - (a_i + Fbar_0(b_i))/(alpha0 + i).
  std::vector<Rational> rec(n + 1, kZero);
  rec[n] = kOne;
  int j = 0;  // 0 = center atom case
  for (int i = n; i >= 1; --i) {
    Rational next = rec[i] - (a[i] + rec[i]) / (alpha0 + Rational(i));
    if (next.is_zero()) fail(Errc::NonGeneric, "star recurrence hit exactly zero");
    rec[i - 1] = next;
    if (next.sign() < 0) {
      j = i;
      break;
    }
  }
  // Realized center values: in case 2 every b_i with i < j collapses to 1,
  // where the center (having no atom) has Fbar_0 = 0.
  sol.center_fbar = rec;
  if (j > 0)
    for (int i = 0; i < j; ++i) sol.center_fbar[i] = kZero;

  sol.cut.assign(n + 1, kOne);  // cut[0] = b_0 = 1
  if (j == 0) {
    sol.kind = StarCase::CenterAtom;
    sol.center_utility = alpha0;
    for (int i = 1; i <= n; ++i) sol.cut[i] = alpha0 / (alpha0 + Rational(i));
    // Necessary for the center to hold the atom: alpha0 > i * a_i.
    for (int i = 1; i <= n; ++i)
      if (!(Rational(i) * a[i] < alpha0))
        fail(Errc::ConstructionBroken, "star case-1 selected but alpha0 <= i * alpha_i");
  } else {
    sol.kind = StarCase::PeripheralAtom;
    sol.atom_seller = j;
    sol.center_utility = a[j] * (alpha0 + Rational(j)) / (a[j] + rec[j]);
    for (int i = 1; i <= n; ++i)
      sol.cut[i] = i < j ? kOne : sol.center_utility / (alpha0 + Rational(i));
    Rational atom = sol.center_utility - (alpha0 + Rational(j) - kOne);
    if (atom.sign() <= 0 || atom >= kOne)
      fail(Errc::ConstructionBroken, "star case-2 atom outside (0,1)");
    if (!(sol.cut[j] < kOne)) fail(Errc::ConstructionBroken, "star case-2 with b_j >= 1");
  }

  // Utilities by rank, bottom-up: u_n = u_0 (a_n + 1)/(alpha0 + n), then
  // u_{i-1} = u_i + b_{i-1} (a_{i-1} - a_i).
  std::vector<Rational> u_rank(n + 1, kZero);
  u_rank[n] = sol.center_utility * (a[n] + kOne) / (alpha0 + Rational(n));
  for (int i = n; i >= 2; --i) u_rank[i - 1] = u_rank[i] + sol.cut[i - 1] * (a[i - 1] - a[i]);
  if (j > 0)
    for (int i = 1; i <= j; ++i)
      if (u_rank[i] != a[i])
        fail(Errc::ConstructionBroken, "star case-2 utilities disagree with alpha");

  sol.utilities.assign(n + 1, kZero);
  sol.utilities[0] = sol.center_utility;
  for (int r = 1; r <= n; ++r) sol.utilities[sol.order[r - 1] + 1] = u_rank[r];

  // Profile via the induced sketch on the star network (center = seller 0).
  Network net(n + 1);
  net.set_alpha(0, alpha0);
  for (int r = 1; r <= n; ++r) {
    net.set_alpha(sol.order[r - 1] + 1, a[r]);
    net.add_edge(0, sol.order[r - 1] + 1, kOne);
  }
  std::vector<std::vector<std::pair<Rational, Rational>>> supports(n + 1);
  supports[0] = {{sol.cut[n], kOne}};
  std::set<int> atoms;
  if (j == 0) {
    atoms.insert(0);
    for (int r = 1; r <= n; ++r) supports[sol.order[r - 1] + 1] = {{sol.cut[r], sol.cut[r - 1]}};
  } else {
    for (int r = 1; r <= j; ++r) atoms.insert(sol.order[r - 1] + 1);
    for (int r = j; r <= n; ++r) supports[sol.order[r - 1] + 1] = {{sol.cut[r], sol.cut[r - 1]}};
  }
  Sketch sk(net, supports, atoms);
  auto outcome = solve_sketch(net, sk);
  if (!outcome.feasible) fail(Errc::ConstructionBroken, "star sketch unexpectedly infeasible");
  for (int i = 0; i <= n; ++i)
    if (outcome.solution.utilities[i] != sol.utilities[i])
      fail(Errc::ConstructionBroken, "star sketch utilities disagree with the recursion");
  sol.profile = sketch_solution_to_profile(outcome.solution);
  return sol;
}

StarSolution solve_star(const Network& net) {
  int n = net.size() - 1;
  if (n < 1) fail(Errc::MalformedInput, "star needs at least two sellers");
  int center = -1;
  for (int i = 0; i < net.size(); ++i)
    if (static_cast<int>(net.neighbors(i).size()) == n) {
      center = i;
      break;
    }
  if (center < 0 || static_cast<int>(net.edges().size()) != n)
    fail(Errc::MalformedInput, "network is not a star");
  for (const auto& e : net.edges())
    if (e.beta != Rational(1)) fail(Errc::NonUnitSpokes, "star solver needs unit spokes");

  std::vector<Rational> peripheral;
  std::vector<int> label;
  for (int i = 0; i < net.size(); ++i)
    if (i != center) {
      peripheral.push_back(net.alpha(i));
      label.push_back(i);
    }
  StarSolution internal = solve_star(net.alpha(center), peripheral);

  // Re-express against the caller's seller numbering.
  StarSolution sol = internal;
  sol.utilities.assign(net.size(), kZero);
  sol.utilities[center] = internal.utilities[0];
  for (int p = 0; p < n; ++p) sol.utilities[label[p]] = internal.utilities[p + 1];
  sol.profile.cdfs.clear();
  for (int i = 0; i < net.size(); ++i) {
    if (i == center)
      sol.profile.cdfs.push_back(internal.profile.cdfs[0]);
    else {
      int p = static_cast<int>(std::find(label.begin(), label.end(), i) - label.begin());
      sol.profile.cdfs.push_back(internal.profile.cdfs[p + 1]);
    }
  }
  for (int r = 0; r < n; ++r) sol.order[r] = label[internal.order[r]];
  return sol;
}

CliqueCandidate clique_candidate(const std::vector<Rational>& alpha_descending) {
  int n = static_cast<int>(alpha_descending.size());
  if (n < 2) fail(Errc::MalformedInput, "clique candidate needs at least two sellers");
  for (int i = 0; i + 1 < n; ++i)
    if (!(alpha_descending[i + 1] < alpha_descending[i]))
      fail(Errc::MalformedInput, "clique candidate needs strictly descending alphas");
  if (alpha_descending[n - 1].sign() < 0) fail(Errc::MalformedInput, "negative captive market");

  // 1-based alpha, q, t.
  std::vector<Rational> al(n + 1, kZero), q(n + 1, kZero), t(n + 1, kZero);
  for (int i = 1; i <= n; ++i) al[i] = alpha_descending[i - 1];

  q[n] = kOne;
  std::vector<Rational> ratio(n, kZero);  // ratio[i] = t_i / t_{i+1}
  for (int i = n - 1; i >= 1; --i) {
    Rational base = al[i] + Rational(i - 1);
    if (base.sign() <= 0) fail(Errc::ConstructionBroken, "degenerate stage ratio");
    ratio[i] = (base + q[i + 1]) / base;
    q[i] = (al[i + 1] + Rational(i)) / ratio[i] - (al[i + 1] + Rational(i - 1));
    if (q[i].sign() <= 0 || !(q[i] < kOne))
      fail(Errc::ConstructionBroken, "stage probability left (0,1)");
  }
  t[1] = kOne;
  for (int i = 1; i < n; ++i) t[i + 1] = t[i] / ratio[i];

  CliqueCandidate cand;
  cand.t.assign(t.begin() + 1, t.end());
  cand.q.assign(q.begin() + 1, q.end());
  cand.utilities.assign(n, kZero);
  for (int i = 1; i <= n; ++i) cand.utilities[i - 1] = t[i] * (al[i] + Rational(i - 1));

  Network net(n);
  for (int i = 0; i < n; ++i) net.set_alpha(i, alpha_descending[i]);
  for (int i = 0; i < n; ++i)
    for (int jj = i + 1; jj < n; ++jj) net.add_edge(i, jj, kOne);

  std::vector<std::vector<std::pair<Rational, Rational>>> supports(n);
  for (int i = 1; i <= n; ++i) {
    const Rational& lo = i == n ? t[n] : t[i + 1];
    const Rational& hi = i == 1 ? kOne : t[i - 1];
    supports[i - 1] = {{lo, hi}};
  }
  Sketch sk(net, supports, {0});

  SketchSolution ss;
  ss.sketch = sk;
  ss.utilities = cand.utilities;
  int k = sk.k();
  ss.fbar.assign(n, std::vector<Rational>(k, kZero));
  for (int i = 1; i <= n; ++i)
    for (int jt = 0; jt < k; ++jt) {
      int jpoint = jt + 1;  // boundary points coincide with t_1..t_n
      if (jpoint >= i + 1)
        ss.fbar[i - 1][jt] = kOne;
      else if (jpoint == i)
        ss.fbar[i - 1][jt] = q[i];
      else
        ss.fbar[i - 1][jt] = kZero;
    }
  ss.min_slack = min_strict_slack(ss);
  ss.unique = check_full_rank(net, sk);
  cand.profile = sketch_solution_to_profile(ss);
  cand.flagged = true;
  return cand;
}

}  // namespace bnet

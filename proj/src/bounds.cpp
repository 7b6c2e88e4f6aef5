#include "bnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

namespace {

const Rational kZero(0);
const Rational kOne(1);

// Effective degree and largest-component diameter of a subnetwork given by a
// seller set and an edge filter.  The numerator is either alpha + the full
// incident market mass (the cut lemma's Delta_G) or just the kept edges (the
// two-scale variant, where only the subnetwork's own markets count).
struct SubMetrics {
  Rational delta = Rational(1);
  int diameter = 0;
};

template <typename EdgeKeep>
SubMetrics sub_metrics(const Network& net, const std::vector<int>& members, EdgeKeep keep,
                       bool full_numerator) {
  SubMetrics out;
  std::set<int> in(members.begin(), members.end());
  for (int i : members) {
    Rational mass = full_numerator ? net.alpha(i) + net.beta_total(i) : kZero;
    std::vector<std::pair<int, Rational>> kept;
    for (const auto& [j, b] : net.neighbors(i))
      if (in.count(j) && keep(i, j)) {
        if (!full_numerator) mass += b;
        kept.emplace_back(j, b);
      }
    for (const auto& [j, b] : kept) out.delta = max(out.delta, mass / b);
  }
  // BFS diameters inside the subnetwork.
  for (int s : members) {
    std::vector<int> dist(net.size(), -1);
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& [w, b] : net.neighbors(v))
        if (in.count(w) && keep(v, w) && dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
    }
    for (int v : members)
      if (dist[v] > out.diameter) out.diameter = dist[v];
  }
  return out;
}

}  // namespace

std::vector<BoundViolation> neighbor_bound(const Network& net, const std::vector<Rational>& u) {
  if (static_cast<int>(u.size()) != net.size())
    fail(Errc::MalformedInput, "utility vector size mismatch");
  GraphMetrics gm = graph_metrics(net);
  std::vector<BoundViolation> out;
  auto check = [&](int i, int j) {
    Rational required = u[i] / gm.effective_degree[i];
    if (u[j] < required) {
      std::ostringstream os;
      os << "u_" << j << " = " << u[j] << " < u_" << i << "/Delta_" << i << " = " << required;
      out.push_back({i, j, required, u[j], os.str()});
    }
  };
  for (const auto& e : net.edges()) {
    check(e.a, e.b);
    check(e.b, e.a);
  }
  return out;
}

std::vector<std::pair<Rational, Rational>> path_bounds(const Network& net) {
  if (validate_network(net) == Trivia::Disconnected)
    fail(Errc::Disconnected, "path bounds need a connected network");
  GraphMetrics gm = graph_metrics(net);
  Rational grow = Rational::pow(gm.effective_degree_max, gm.diameter);
  Rational lower = gm.alpha_max / grow;
  Rational upper = gm.alpha_max * grow;
  return std::vector<std::pair<Rational, Rational>>(net.size(), {lower, upper});
}

CutBound cut_bound(const Network& net, const std::vector<int>& group) {
  if (group.empty()) fail(Errc::EmptySubset, "cut bound needs a nonempty seller subset");
  std::set<int> in(group.begin(), group.end());
  for (int i : group)
    if (i < 0 || i >= net.size()) fail(Errc::MalformedInput, "seller index out of range");

  CutBound cb;
  cb.epsilon = kZero;
  for (int i : group) {
    Rational leak = net.alpha(i);
    for (const auto& [j, b] : net.neighbors(i))
      if (!in.count(j)) leak += b;
    cb.epsilon = max(cb.epsilon, leak);
  }
  SubMetrics sm =
      sub_metrics(net, group, [](int, int) { return true; }, /*full_numerator=*/true);
  cb.delta_g = sm.delta;
  cb.diameter_g = sm.diameter;
  cb.bound = cb.epsilon * Rational::pow(cb.delta_g, cb.diameter_g);
  return cb;
}

BigCutBound big_cut_bound(const Network& net, const std::vector<std::pair<int, int>>& big_edges,
                          const Rational& small_scale) {
  if (big_edges.empty()) fail(Errc::EmptySubset, "big-cut bound needs a nonempty edge set");
  if (small_scale.sign() <= 0 || small_scale > kOne)
    fail(Errc::PreconditionViolated, "small scale must lie in (0,1]");

  auto is_big = [&](int a, int b) {
    for (const auto& [x, y] : big_edges)
      if ((x == a && y == b) || (x == b && y == a)) return true;
    return false;
  };
  BigCutBound bb;
  bb.big_scale = kZero;
  bool first = true;
  for (const auto& [x, y] : big_edges) {
    auto b = net.beta(x, y);
    if (!b) fail(Errc::UnknownEdge, "big edge not present in the network");
    bb.big_scale = first ? *b : min(bb.big_scale, *b);
    first = false;
  }
  for (int i = 0; i < net.size(); ++i)
    if (net.alpha(i) > small_scale)
      fail(Errc::PreconditionViolated, "captive market above the small scale");
  for (const auto& e : net.edges())
    if (!is_big(e.a, e.b) && e.beta > small_scale)
      fail(Errc::PreconditionViolated, "market neither small nor in the big cut");
  if (bb.big_scale < small_scale)
    fail(Errc::PreconditionViolated, "big edges must be at least the small scale");

  // Components after removing the big edges; G = captive-free components.
  std::vector<int> comp(net.size(), -1);
  int ncomp = 0;
  for (int s = 0; s < net.size(); ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = ncomp;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& [w, b] : net.neighbors(v))
        if (comp[w] < 0 && !is_big(v, w)) {
          comp[w] = ncomp;
          queue.push_back(w);
        }
    }
    ++ncomp;
  }
  std::vector<char> captive(ncomp, 0);
  for (int i = 0; i < net.size(); ++i)
    if (net.alpha(i).sign() > 0) captive[comp[i]] = 1;
  for (int i = 0; i < net.size(); ++i)
    if (!captive[comp[i]]) bb.separated.push_back(i);
  if (bb.separated.empty())
    fail(Errc::PreconditionViolated, "big edges do not separate any captive-free sellers");

  std::set<int> in_b;
  for (const auto& [x, y] : big_edges) {
    in_b.insert(x);
    in_b.insert(y);
  }
  bb.big_side.assign(in_b.begin(), in_b.end());
  std::set<int> in_g(bb.separated.begin(), bb.separated.end());
  for (int i : bb.separated)
    if (!in_b.count(i)) bb.bounded_sellers.push_back(i);

  // Delta, D over the big subnetwork on B and the small subnetwork on G-B;
  // the text mixes the two, so take the conservative maximum of both.
  SubMetrics big = sub_metrics(net, bb.big_side, is_big, /*full_numerator=*/false);
  SubMetrics small =
      sub_metrics(net, bb.bounded_sellers,
                  [&](int a, int b) { return !is_big(a, b); }, /*full_numerator=*/false);
  bb.delta = max(big.delta, small.delta);
  bb.diameter = std::max(big.diameter, small.diameter);
  Rational n2(static_cast<long>(net.size()));
  n2 *= n2;
  bb.bound = n2 * Rational::pow(bb.delta, 2L * bb.diameter) / bb.big_scale;
  return bb;
}

int attains_alpha(const Network& net, const std::vector<Rational>& u, double tol) {
  if (static_cast<int>(u.size()) != net.size())
    fail(Errc::MalformedInput, "utility vector size mismatch");
  for (int i = 0; i < net.size(); ++i) {
    if (tol == 0.0) {
      if (u[i] == net.alpha(i)) return i;
    } else if (std::fabs((u[i] - net.alpha(i)).to_double()) <= tol) {
      return i;
    }
  }
  return -1;
}

}  // namespace bnet

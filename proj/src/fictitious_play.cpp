#include "bnet/fictitious_play.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

double fp_grid_floor(const Network& net, int grid) {
  double floor_val = 2.0;
  for (int i = 0; i < net.size(); ++i) {
    double a = net.alpha(i).to_double();
    double b = net.beta_total(i).to_double();
    double v = (a + b) > 0 ? a / (a + b) : 0.0;
    floor_val = std::min(floor_val, v);
  }
  if (floor_val > 0.0 && floor_val < 1.0) return floor_val;
  // No captive market anywhere: undercutting must stay strictly profitable
  // all the way down, which needs the floor strictly above the grid spacing
  // (at exactly 1/grid the bottom rung ties with half the rung above it and
  // the race stalls one step short).
  return std::min(1.0 / (grid - 1), 0.5);
}

EmpiricalProfile run_fictitious_play(const Network& net, const FpConfig& cfg) {
  if (cfg.grid < 2) fail(Errc::MalformedInput, "fictitious play needs at least two grid points");
  if (cfg.iterations < 1) fail(Errc::MalformedInput, "fictitious play needs at least one round");
  int n = net.size();
  int m = cfg.grid;
  double lo = fp_grid_floor(net, m);

  std::vector<double> price(m);
  for (int g = 0; g < m; ++g)
    price[g] = lo + (1.0 - lo) * static_cast<double>(g) / static_cast<double>(m - 1);

  std::mt19937_64 rng(cfg.seed);

  // Play counts; everyone starts with one play at the top of the grid.
  std::vector<std::vector<long>> counts(n, std::vector<long>(m, 0));
  std::vector<long> total(n, 1);
  for (int i = 0; i < n; ++i) counts[i][m - 1] = 1;
  std::vector<std::vector<int>> plays(n);

  std::vector<double> payoff(m);
  std::vector<double> win(m);  // opponent-weighted win probability sums

  std::uniform_real_distribution<double> unit_draw(0.0, 1.0);
  for (long round = 0; round < cfg.iterations; ++round) {
    int i = static_cast<int>(round % n);
    std::fill(win.begin(), win.end(), 0.0);
    for (const auto& [j, beta_r] : net.neighbors(i)) {
      double beta = beta_r.to_double();
      double tie_share;
      switch (cfg.tie) {
        case TieRule::LowerIndexWins: tie_share = i < j ? 1.0 : 0.0; break;
        case TieRule::RandomUniform: tie_share = unit_draw(rng); break;  // E = 1/2
        default: tie_share = 0.5; break;
      }
      // suffix count = plays of j strictly above grid point g.
      double inv = 1.0 / static_cast<double>(total[j]);
      long above = 0;
      for (int g = m - 1; g >= 0; --g) {
        win[g] += beta * (static_cast<double>(above) + tie_share * counts[j][g]) * inv;
        above += counts[j][g];
      }
    }
    double alpha = net.alpha(i).to_double();
    // Brute-force argmax; mathematical ties at different prices land within
    // float rounding of each other, so near-ties break to the lower price
    // (undercutting when indifferent).
    double best = -1.0;
    for (int g = 0; g < m; ++g) {
      payoff[g] = price[g] * (alpha + win[g]);
      if (payoff[g] > best) best = payoff[g];
    }
    int choice = m - 1;
    for (int g = 0; g < m; ++g)
      if (payoff[g] >= best - 1e-12 * std::max(1.0, best)) {
        choice = g;
        break;
      }
    counts[i][choice] += 1;
    total[i] += 1;
    plays[i].push_back(choice);
  }

  // Report histograms without the burn-in prefix (and without the seed play).
  EmpiricalProfile emp;
  emp.grid_price = price;
  emp.mass.assign(n, std::vector<double>(m, 0.0));
  for (int i = 0; i < n; ++i) {
    size_t skip = static_cast<size_t>(std::floor(cfg.burnin * static_cast<double>(plays[i].size())));
    size_t kept = plays[i].size() - skip;
    if (kept == 0) {  // degenerate configs: fall back to everything
      skip = 0;
      kept = plays[i].size();
    }
    for (size_t t = skip; t < plays[i].size(); ++t) emp.mass[i][plays[i][t]] += 1.0;
    for (int g = 0; g < m; ++g) emp.mass[i][g] /= static_cast<double>(kept);
  }
  return emp;
}

std::vector<double> kolmogorov_distance(const EmpiricalProfile& emp, const StrategyProfile& prof) {
  int n = static_cast<int>(emp.mass.size());
  if (prof.size() != n) fail(Errc::MalformedInput, "profile size mismatch");
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double cum = 0.0;
    for (size_t g = 0; g < emp.grid_price.size(); ++g) {
      cum += emp.mass[i][g];
      Rational x = Rational::from_double(std::min(emp.grid_price[g], 1.0));
      double analytic = prof.cdfs[i].eval(x, PiecewiseCdf::Value::F).to_double();
      out[i] = std::max(out[i], std::fabs(cum - analytic));
    }
  }
  return out;
}

std::string histogram_csv(const EmpiricalProfile& emp) {
  std::ostringstream os;
  os << "seller,gridPrice,mass\n";
  os.precision(17);
  for (size_t i = 0; i < emp.mass.size(); ++i)
    for (size_t g = 0; g < emp.grid_price.size(); ++g)
      os << i << "," << emp.grid_price[g] << "," << emp.mass[i][g] << "\n";
  return os.str();
}

}  // namespace bnet

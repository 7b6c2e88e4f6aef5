// Command-line front end: closed-form solvers, sketch/LP solving, boundary
// search, verification, fictitious play, and utility bounds, wired to the
// JSON/CSV file formats.

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bnet/boundary_search.hpp"
#include "bnet/bounds.hpp"
#include "bnet/closed_form.hpp"
#include "bnet/errors.hpp"
#include "bnet/fictitious_play.hpp"
#include "bnet/json_io.hpp"
#include "bnet/sketch.hpp"
#include "bnet/verifier.hpp"

namespace {

using namespace bnet;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // NotEquilibrium / Infeasible / NoConvergence
constexpr int kExitUsage = 2;

struct GlobalFlags {
  std::string out = "out";
  bool use_float = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

VerifyOptions verify_options(const GlobalFlags& g) {
  VerifyOptions opt;
  opt.exact = !g.use_float;
  opt.tol = g.tol;
  return opt;
}

void print_utilities(const NetworkDoc& doc, const std::vector<Rational>& u) {
  std::cout << "utilities:\n";
  for (int i = 0; i < doc.net.size(); ++i)
    std::cout << "  " << doc.labels[i] << ": " << u[i].str() << " = " << std::setprecision(9)
              << u[i].to_double() << "\n";
}

void print_report(const NetworkDoc& doc, const VerificationReport& rep) {
  std::cout << "verdict: " << to_string(rep.verdict) << "\n";
  std::cout << "max violation: " << rep.max_violation.str() << " = " << std::setprecision(9)
            << rep.max_violation.to_double() << "\n";
  for (size_t i = 0; i < rep.sellers.size(); ++i) {
    const auto& d = rep.sellers[i];
    std::cout << "  " << doc.labels[i] << ": u = " << std::setprecision(9)
              << d.utility.to_double();
    if (d.worst_gain.sign() > 0)
      std::cout << ", gains " << d.worst_gain.to_double() << " at price "
                << d.worst_price.to_double();
    std::cout << "\n";
  }
  for (const auto& f : rep.findings)
    std::cout << "  finding " << to_string(f.kind) << ": " << f.detail << "\n";
}

int write_profile_outputs(const GlobalFlags& g, const NetworkDoc& doc,
                          const StrategyProfile& prof, const VerificationReport& rep) {
  save_json_file(g.out + ".profile.json", profile_to_json(prof, doc));
  save_text_file(g.out + ".profile.csv", profile_csv(prof, doc));
  save_json_file(g.out + ".report.json", report_to_json(rep, doc));
  print_report(doc, rep);
  return rep.verdict == Verdict::Equilibrium ? kExitOk : kExitNegative;
}

int run_solve(const GlobalFlags& g, const std::string& family, const std::string& net_path,
              const std::string& root_label) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  StrategyProfile prof;
  std::vector<Rational> utilities;

  if (family == "two") {
    if (doc.net.size() != 2 || doc.net.edges().size() != 1)
      fail(Errc::MalformedInput, "solve two needs exactly two sellers sharing one market");
    int hi = doc.net.alpha(0) >= doc.net.alpha(1) ? 0 : 1;
    int lo = 1 - hi;
    auto sol = solve_two_sellers(doc.net.alpha(hi), doc.net.alpha(lo), doc.net.edges()[0].beta);
    prof.cdfs = {sol.profile.cdfs[hi == 0 ? 0 : 1], sol.profile.cdfs[hi == 0 ? 1 : 0]};
    utilities = {sol.utilities[hi == 0 ? 0 : 1], sol.utilities[hi == 0 ? 1 : 0]};
  } else if (family == "line") {
    auto sol = solve_line_single_captive(doc.net);
    prof = sol.profile;
    utilities = sol.utilities;
  } else if (family == "tree") {
    int root = -1;
    if (!root_label.empty()) {
      root = doc.index_of(root_label);
    } else {
      for (int i = 0; i < doc.net.size(); ++i)
        if (doc.net.alpha(i).sign() > 0) root = i;
    }
    if (root < 0) fail(Errc::MalformedInput, "no captive market to root the tree at");
    auto sol = solve_tree_single_captive(doc.net, root);
    prof = sol.profile;
    utilities = sol.utilities;
  } else if (family == "star") {
    auto sol = solve_star(doc.net);
    prof = sol.profile;
    utilities = sol.utilities;
  } else if (family == "clique") {
    std::vector<int> order(doc.net.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return doc.net.alpha(b) < doc.net.alpha(a); });
    std::vector<Rational> descending;
    for (int i : order) descending.push_back(doc.net.alpha(i));
    auto cand = clique_candidate(descending);
    for (const auto& e : doc.net.edges())
      if (e.beta != Rational(1)) fail(Errc::MalformedInput, "clique candidate needs unit markets");
    if (static_cast<int>(doc.net.edges().size()) !=
        doc.net.size() * (doc.net.size() - 1) / 2)
      fail(Errc::MalformedInput, "network is not a clique");
    prof.cdfs.reserve(doc.net.size());
    utilities.assign(doc.net.size(), Rational(0));
    std::vector<int> rank(doc.net.size());
    for (int r = 0; r < doc.net.size(); ++r) rank[order[r]] = r;
    for (int i = 0; i < doc.net.size(); ++i) {
      prof.cdfs.push_back(cand.profile.cdfs[rank[i]]);
      utilities[i] = cand.utilities[rank[i]];
    }
    std::cout << "note: flagged construction; the verifier's verdict below is authoritative\n";
  } else {
    fail(Errc::MalformedInput, "unknown solve family '" + family + "'");
  }

  print_utilities(doc, utilities);
  auto rep = verify_profile(doc.net, prof, verify_options(g));
  return write_profile_outputs(g, doc, prof, rep);
}

int run_sketch_solve(const GlobalFlags& g, const std::string& net_path,
                     const std::string& sketch_path) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  Sketch sk = sketch_from_json(load_json_file(sketch_path), doc);
  auto outcome = solve_sketch(doc.net, sk);
  if (!outcome.feasible) {
    std::cerr << "sketch infeasible; violated constraints:\n";
    for (const auto& c : outcome.violated_constraints) std::cerr << "  " << c << "\n";
    return kExitNegative;
  }
  save_json_file(g.out + ".solution.json", sketch_solution_to_json(outcome.solution, doc));
  std::cout << (outcome.solution.unique ? "solution is unique for this sketch (full rank)\n"
                                        : "solution set not unique; returning one vertex\n");
  print_utilities(doc, outcome.solution.utilities);
  StrategyProfile prof = sketch_solution_to_profile(outcome.solution);
  auto rep = verify_profile(doc.net, prof, verify_options(g));
  return write_profile_outputs(g, doc, prof, rep);
}

int run_search(const GlobalFlags& g, const std::string& net_path, const std::string& shape_path) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  FreeBoundarySketch fbs = shape_from_json(load_json_file(shape_path), doc);
  SearchOptions opt;
  opt.seed = g.seed;
  auto res = solve_free_boundaries(doc.net, fbs, opt);

  if (res.status == SearchStatus::NoConvergence) {
    std::cerr << "no convergence after " << res.attempts << " attempts\n";
    return kExitNegative;
  }
  std::cout << "boundary points:";
  for (const auto& t : res.solution.sketch.boundary_points())
    std::cout << " " << (res.solution.exact ? t.str() : std::to_string(t.to_double()));
  std::cout << "\n" << (res.solution.exact ? "snapped to exact rationals\n" : "float solution\n");
  save_json_file(g.out + ".solution.json", sketch_solution_to_json(res.solution, doc));
  print_utilities(doc, res.solution.utilities);

  if (res.status == SearchStatus::StrictViolated) {
    std::cerr << "equality system solved, but the solution is not an equilibrium:\n";
    for (const auto& v : res.violations) std::cerr << "  " << v << "\n";
    return kExitNegative;
  }
  StrategyProfile prof = sketch_solution_to_profile(res.solution);
  GlobalFlags gv = g;
  if (!res.solution.exact) gv.use_float = true;
  auto rep = verify_profile(doc.net, prof, verify_options(gv));
  return write_profile_outputs(gv, doc, prof, rep);
}

int run_verify(const GlobalFlags& g, const std::string& net_path, const std::string& prof_path) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  StrategyProfile prof = profile_from_json(load_json_file(prof_path), doc);
  auto rep = verify_profile(doc.net, prof, verify_options(g));
  save_json_file(g.out + ".report.json", report_to_json(rep, doc));
  print_report(doc, rep);
  return rep.verdict == Verdict::Equilibrium ? kExitOk : kExitNegative;
}

int run_fp(const GlobalFlags& g, const std::string& net_path, const FpConfig& cfg) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  auto emp = run_fictitious_play(doc.net, cfg);
  save_text_file(g.out + ".fp.csv", histogram_csv(emp));
  std::cout << "grid floor " << std::setprecision(9) << emp.grid_price.front() << ", "
            << emp.grid_price.size() << " points, histogram written to " << g.out << ".fp.csv\n";
  return kExitOk;
}

int run_bounds(const GlobalFlags& g, const std::string& net_path, const std::string& prof_path,
               const std::string& cut_arg, const std::string& big_cut_arg,
               const std::string& small_scale_arg) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  auto path = path_bounds(doc.net);
  std::vector<BoundViolation> neighbor;
  int exit_code = kExitOk;

  std::cout << "path bounds (every seller): [" << path[0].first.str() << ", "
            << path[0].second.str() << "]\n";

  if (!prof_path.empty()) {
    StrategyProfile prof = profile_from_json(load_json_file(prof_path), doc);
    auto rep = verify_profile(doc.net, prof, verify_options(g));
    if (rep.verdict != Verdict::Equilibrium) {
      std::cerr << "profile is not a verified equilibrium; bounds apply to equilibria only\n";
      exit_code = kExitNegative;
    }
    std::vector<Rational> u;
    for (const auto& d : rep.sellers) u.push_back(d.utility);
    neighbor = neighbor_bound(doc.net, u);
    for (const auto& v : neighbor) std::cout << "neighbor-bound violation: " << v.detail << "\n";
    if (neighbor.empty()) std::cout << "neighbor bounds: no violations\n";
    int witness = attains_alpha(doc.net, u, g.use_float ? g.tol : 0.0);
    if (witness >= 0)
      std::cout << "seller " << doc.labels[witness] << " attains u = alpha exactly\n";
  }

  if (!cut_arg.empty()) {
    std::vector<int> group;
    std::string token;
    std::istringstream in(cut_arg);
    while (std::getline(in, token, ',')) group.push_back(doc.index_of(token));
    auto cb = cut_bound(doc.net, group);
    std::cout << "cut bound for the group: epsilon = " << cb.epsilon.str() << ", bound = "
              << cb.bound.str() << "\n";
  }

  if (!big_cut_arg.empty()) {
    std::vector<std::pair<int, int>> big;
    std::string token;
    std::istringstream in(big_cut_arg);
    while (std::getline(in, token, ',')) {
      auto dash = token.find('-');
      if (dash == std::string::npos)
        fail(Errc::MalformedInput, "big-cut edges look like idA-idB");
      big.emplace_back(doc.index_of(token.substr(0, dash)),
                       doc.index_of(token.substr(dash + 1)));
    }
    Rational scale = small_scale_arg.empty() ? Rational(1) : Rational::parse(small_scale_arg);
    auto bb = big_cut_bound(doc.net, big, scale);
    std::cout << "big-cut bound: M = " << bb.big_scale.str() << ", bound "
              << bb.bound.str() << " = " << std::setprecision(9) << bb.bound.to_double()
              << " for sellers";
    for (int i : bb.bounded_sellers) std::cout << " " << doc.labels[i];
    std::cout << "\n";
  }

  save_json_file(g.out + ".bounds.json", bounds_to_json(doc, path, neighbor));
  return exit_code;
}

int run_export(const GlobalFlags& g, const std::string& net_path, const std::string& prof_path,
               int grid) {
  NetworkDoc doc = network_from_json(load_json_file(net_path));
  StrategyProfile prof = profile_from_json(load_json_file(prof_path), doc);
  save_text_file(g.out + ".cdf.csv", profile_csv(prof, doc, grid));
  std::cout << "wrote " << g.out << ".cdf.csv (" << grid << " grid points per seller)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed equilibria of Bertrand price competition on networks"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--out", g.out, "output file prefix")->capture_default_str();
  app.add_flag("--float", g.use_float, "verify with a float tolerance instead of exactly");
  app.add_option("--tol", g.tol, "verification tolerance in float mode")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed for search restarts / fictitious play");

  std::string family, net_path, aux_path, root_label, cut_arg;
  int grid = 512;

  auto* solve = app.add_subcommand("solve", "closed-form solver families");
  solve->add_option("family", family, "two|line|tree|star|clique")->required();
  solve->add_option("network", net_path, "network JSON")->required();
  solve->add_option("--root", root_label, "tree root seller id (defaults to the captive seller)");

  auto* sketch = app.add_subcommand("sketch-solve", "solve LP1 for a sketch with known bounds");
  sketch->add_option("network", net_path)->required();
  sketch->add_option("sketch", aux_path, "sketch JSON with numeric supports")->required();

  auto* search = app.add_subcommand("search-boundaries", "solve a sketch shape with unknown t");
  search->add_option("network", net_path)->required();
  search->add_option("shape", aux_path, "sketch JSON with interval index sets")->required();

  auto* verify = app.add_subcommand("verify", "verify a strategy profile");
  verify->add_option("network", net_path)->required();
  verify->add_option("profile", aux_path)->required();

  FpConfig fp_cfg;
  auto* fp = app.add_subcommand("fp", "fictitious-play oracle");
  fp->add_option("network", net_path)->required();
  fp->add_option("--grid", fp_cfg.grid, "price grid size")->capture_default_str();
  fp->add_option("--iters", fp_cfg.iterations, "best-response rounds")->capture_default_str();
  fp->add_option("--burnin", fp_cfg.burnin, "fraction of rounds dropped")->capture_default_str();
  std::string tie = "split";
  fp->add_option("--tie", tie, "split|lower|random")->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "utility bounds and checks");
  bounds->add_option("network", net_path)->required();
  bounds->add_option("--profile", aux_path, "verified equilibrium profile JSON");
  bounds->add_option("--cut", cut_arg, "comma-separated seller ids forming the group G");
  std::string big_cut_arg, small_scale_arg;
  bounds->add_option("--big-cut", big_cut_arg, "separating edges idA-idB,idC-idD (sizes >= M)");
  bounds->add_option("--small-scale", small_scale_arg, "bound on every other market size");

  auto* exportc = app.add_subcommand("export-cdf", "sample profile CDFs to CSV");
  exportc->add_option("network", net_path)->required();
  exportc->add_option("profile", aux_path)->required();
  exportc->add_option("--grid", grid, "sample points per seller")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(g, family, net_path, root_label);
    if (sketch->parsed()) return run_sketch_solve(g, net_path, aux_path);
    if (search->parsed()) return run_search(g, net_path, aux_path);
    if (verify->parsed()) return run_verify(g, net_path, aux_path);
    if (fp->parsed()) {
      fp_cfg.seed = g.seed;
      if (tie == "split")
        fp_cfg.tie = TieRule::SplitEqually;
      else if (tie == "lower")
        fp_cfg.tie = TieRule::LowerIndexWins;
      else if (tie == "random")
        fp_cfg.tie = TieRule::RandomUniform;
      else
        fail(Errc::MalformedInput, "unknown tie rule '" + tie + "'");
      return run_fp(g, net_path, fp_cfg);
    }
    if (bounds->parsed())
      return run_bounds(g, net_path, aux_path, cut_arg, big_cut_arg, small_scale_arg);
    if (exportc->parsed()) return run_export(g, net_path, aux_path, grid);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

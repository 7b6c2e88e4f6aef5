#include "bnet/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bnet/errors.hpp"

namespace bnet {

using nlohmann::json;

int NetworkDoc::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  fail(Errc::MalformedInput, "unknown seller id '" + label + "'");
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) return Rational::from_double(j.get<double>());
  fail(Errc::MalformedInput, "expected a rational (string or number)");
}

json rational_to_json(const Rational& r) { return r.str(); }

namespace {

void check_version(const json& j) {
  if (!j.is_object()) fail(Errc::MalformedInput, "expected a JSON object");
  if (j.contains("formatVersion") && j["formatVersion"].get<int>() != kFormatVersion)
    fail(Errc::MalformedInput, "unsupported formatVersion");
}

}  // namespace

NetworkDoc network_from_json(const json& j) {
  check_version(j);
  if (!j.contains("sellers") || !j["sellers"].is_array() || j["sellers"].empty())
    fail(Errc::MalformedInput, "network needs a nonempty sellers array");

  NetworkDoc doc;
  std::vector<std::pair<std::string, Rational>> sellers;
  for (const auto& s : j["sellers"]) {
    std::string id = s.contains("id") ? s["id"].get<std::string>()
                                      : std::to_string(sellers.size());
    Rational alpha = s.contains("alpha") ? rational_from_json(s["alpha"]) : Rational(0);
    // Repeated ids merge their captive markets (several captive markets are
    // equivalent to one of the combined size).
    bool merged = false;
    for (auto& [eid, ea] : sellers)
      if (eid == id) {
        ea += alpha;
        merged = true;
      }
    if (!merged) sellers.emplace_back(std::move(id), std::move(alpha));
  }

  doc.net = Network(static_cast<int>(sellers.size()));
  for (size_t i = 0; i < sellers.size(); ++i) {
    doc.labels.push_back(sellers[i].first);
    doc.net.set_alpha(static_cast<int>(i), sellers[i].second);
  }
  if (j.contains("markets")) {
    for (const auto& mkt : j["markets"]) {
      int a = doc.index_of(mkt.at("a").get<std::string>());
      int b = doc.index_of(mkt.at("b").get<std::string>());
      doc.net.add_edge(a, b, rational_from_json(mkt.at("beta")));
    }
  }
  return doc;
}

json network_to_json(const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["sellers"] = json::array();
  for (int i = 0; i < doc.net.size(); ++i)
    j["sellers"].push_back({{"id", doc.labels[i]}, {"alpha", rational_to_json(doc.net.alpha(i))}});
  j["markets"] = json::array();
  for (const auto& e : doc.net.edges())
    j["markets"].push_back({{"a", doc.labels[e.a]},
                            {"b", doc.labels[e.b]},
                            {"beta", rational_to_json(e.beta)}});
  return j;
}

StrategyProfile profile_from_json(const json& j, const NetworkDoc& doc) {
  check_version(j);
  if (!j.contains("sellers") || j["sellers"].size() != static_cast<size_t>(doc.net.size()))
    fail(Errc::MalformedInput, "profile sellers do not match the network");

  std::vector<PiecewiseCdf> cdfs(static_cast<size_t>(doc.net.size()), PiecewiseCdf::zero_price());
  std::vector<char> seen(doc.net.size(), 0);
  for (const auto& s : j["sellers"]) {
    int i = doc.index_of(s.at("id").get<std::string>());
    if (seen[i]) fail(Errc::MalformedInput, "duplicate seller in profile");
    seen[i] = 1;
    std::vector<CdfSegment> segs;
    if (s.contains("segments"))
      for (const auto& seg : s["segments"])
        segs.push_back(CdfSegment{rational_from_json(seg.at("xLow")),
                                  rational_from_json(seg.at("xHigh")),
                                  rational_from_json(seg.at("a")),
                                  rational_from_json(seg.at("b"))});
    Rational atom = s.contains("atomAtOne") ? rational_from_json(s["atomAtOne"]) : Rational(0);
    cdfs[static_cast<size_t>(i)] = PiecewiseCdf(std::move(segs), std::move(atom));
  }
  StrategyProfile prof;
  prof.cdfs = std::move(cdfs);
  return prof;
}

json profile_to_json(const StrategyProfile& prof, const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["sellers"] = json::array();
  for (int i = 0; i < prof.size(); ++i) {
    json s;
    s["id"] = doc.labels[i];
    s["atomAtOne"] = rational_to_json(prof.cdfs[i].atom_at_one());
    s["segments"] = json::array();
    for (const auto& seg : prof.cdfs[i].segments())
      s["segments"].push_back({{"xLow", rational_to_json(seg.xlo)},
                               {"xHigh", rational_to_json(seg.xhi)},
                               {"a", rational_to_json(seg.a)},
                               {"b", rational_to_json(seg.b)}});
    j["sellers"].push_back(std::move(s));
  }
  return j;
}

Sketch sketch_from_json(const json& j, const NetworkDoc& doc) {
  check_version(j);
  std::vector<std::vector<std::pair<Rational, Rational>>> supports(doc.net.size());
  if (j.contains("supports"))
    for (auto it = j["supports"].begin(); it != j["supports"].end(); ++it) {
      int i = doc.index_of(it.key());
      for (const auto& iv : it.value()) {
        if (!iv.is_array() || iv.size() != 2)
          fail(Errc::MalformedInput, "support interval must be [lo, hi]");
        supports[i].emplace_back(rational_from_json(iv[0]), rational_from_json(iv[1]));
      }
    }
  std::set<int> atoms;
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) atoms.insert(doc.index_of(a.get<std::string>()));
  return Sketch(doc.net, std::move(supports), std::move(atoms));
}

json sketch_to_json(const Sketch& sketch, const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["supports"] = json::object();
  for (int i = 0; i < sketch.sellers(); ++i) {
    json ivs = json::array();
    for (const auto& [lo, hi] : sketch.supports()[i])
      ivs.push_back({rational_to_json(lo), rational_to_json(hi)});
    j["supports"][doc.labels[i]] = std::move(ivs);
  }
  j["atoms"] = json::array();
  for (int i : sketch.atoms()) j["atoms"].push_back(doc.labels[i]);
  return j;
}

FreeBoundarySketch shape_from_json(const json& j, const NetworkDoc& doc) {
  check_version(j);
  if (!j.contains("k")) fail(Errc::MalformedInput, "sketch shape needs the boundary count k");
  FreeBoundarySketch fbs;
  fbs.k = j["k"].get<int>();
  if (fbs.k < 2) fail(Errc::MalformedInput, "sketch shape needs k >= 2");
  fbs.interval_sellers.assign(fbs.k - 1, {});
  if (j.contains("intervals"))
    for (auto it = j["intervals"].begin(); it != j["intervals"].end(); ++it) {
      int i = doc.index_of(it.key());
      for (const auto& idx : it.value()) {
        int v = idx.get<int>();
        if (v < 1 || v >= fbs.k) fail(Errc::MalformedInput, "interval index out of range");
        fbs.interval_sellers[v - 1].push_back(i);
      }
    }
  for (auto& group : fbs.interval_sellers) std::sort(group.begin(), group.end());
  if (j.contains("atoms"))
    for (const auto& a : j["atoms"]) fbs.atoms.insert(doc.index_of(a.get<std::string>()));
  return fbs;
}

json shape_to_json(const FreeBoundarySketch& fbs, const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["k"] = fbs.k;
  json intervals = json::object();
  for (int i = 0; i < doc.net.size(); ++i) {
    json idxs = json::array();
    for (int jj = 1; jj < fbs.k; ++jj) {
      const auto& group = fbs.interval_sellers[jj - 1];
      if (std::find(group.begin(), group.end(), i) != group.end()) idxs.push_back(jj);
    }
    if (!idxs.empty()) intervals[doc.labels[i]] = std::move(idxs);
  }
  j["intervals"] = std::move(intervals);
  j["atoms"] = json::array();
  for (int i : fbs.atoms) j["atoms"].push_back(doc.labels[i]);
  return j;
}

json sketch_solution_to_json(const SketchSolution& ss, const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["exact"] = ss.exact;
  j["uniqueForSketch"] = ss.unique;
  j["boundaryPoints"] = json::array();
  for (const auto& t : ss.sketch.boundary_points()) j["boundaryPoints"].push_back(rational_to_json(t));
  j["sketch"] = sketch_to_json(ss.sketch, doc);
  j["Fbar"] = json::object();
  j["utilities"] = json::object();
  for (int i = 0; i < ss.sketch.sellers(); ++i) {
    json row = json::array();
    for (const auto& v : ss.fbar[i]) row.push_back(rational_to_json(v));
    j["Fbar"][doc.labels[i]] = std::move(row);
    j["utilities"][doc.labels[i]] = rational_to_json(ss.utilities[i]);
  }
  return j;
}

json report_to_json(const VerificationReport& rep, const NetworkDoc& doc) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["verdict"] = to_string(rep.verdict);
  j["exact"] = rep.exact;
  j["tolerance"] = rep.tol;
  j["maxViolation"] = rational_to_json(rep.max_violation);
  j["sellers"] = json::array();
  for (size_t i = 0; i < rep.sellers.size(); ++i) {
    const auto& d = rep.sellers[i];
    j["sellers"].push_back({{"id", doc.labels[i]},
                            {"utility", rational_to_json(d.utility)},
                            {"worstDeviationPrice", rational_to_json(d.worst_price)},
                            {"worstDeviationGain", rational_to_json(d.worst_gain)}});
  }
  j["findings"] = json::array();
  for (const auto& f : rep.findings) {
    json sellers = json::array();
    for (int s : f.sellers) sellers.push_back(doc.labels[s]);
    j["findings"].push_back(
        {{"kind", to_string(f.kind)}, {"sellers", std::move(sellers)}, {"detail", f.detail}});
  }
  return j;
}

json bounds_to_json(const NetworkDoc& doc,
                    const std::vector<std::pair<Rational, Rational>>& path,
                    const std::vector<BoundViolation>& neighbor_violations) {
  json j;
  j["formatVersion"] = kFormatVersion;
  j["pathBounds"] = json::array();
  for (int i = 0; i < doc.net.size(); ++i)
    j["pathBounds"].push_back({{"id", doc.labels[i]},
                               {"lower", rational_to_json(path[i].first)},
                               {"upper", rational_to_json(path[i].second)}});
  j["neighborViolations"] = json::array();
  for (const auto& v : neighbor_violations)
    j["neighborViolations"].push_back({{"i", doc.labels[v.seller_i]},
                                       {"j", doc.labels[v.seller_j]},
                                       {"required", rational_to_json(v.required)},
                                       {"actual", rational_to_json(v.actual)},
                                       {"detail", v.detail}});
  return j;
}

std::string profile_csv(const StrategyProfile& prof, const NetworkDoc& doc, int grid_points) {
  if (grid_points < 2) fail(Errc::MalformedInput, "csv grid needs at least two points");
  std::ostringstream os;
  os << "seller,x,F\n";
  os.precision(17);
  for (int i = 0; i < prof.size(); ++i) {
    for (int g = 0; g < grid_points; ++g) {
      Rational x(static_cast<long>(g), static_cast<long>(grid_points - 1));
      Rational f = prof.cdfs[i].eval(x, PiecewiseCdf::Value::F);
      os << doc.labels[i] << "," << x.to_double() << "," << f.to_double() << "\n";
    }
  }
  return os.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::Io, "cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write " + path);
  out << j.dump(2) << "\n";
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Errc::Io, "cannot write " + path);
  out << text;
}

}  // namespace bnet

// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "fixtures.hpp"
#include "graph_oracle.hpp"
#include "scimetrics/crediting.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/indicators.hpp"
#include "scimetrics/interdisciplinarity.hpp"
#include "scimetrics/network.hpp"
#include "scimetrics/report.hpp"
#include "scimetrics/text.hpp"

namespace fs = std::filesystem;
using namespace scimetrics;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Criterion 1
Outcome growth_rate() {
  Outcome o;
  const auto t0 = Clock::now();
  const double r = cagr(951, 2773, 15);
  const double ms = elapsed_ms(t0);
  o.require(std::abs(100 * r - 7.94) <= 0.05, "cagr = " + fmt("%.4f%%", 100 * r));
  o.require(ms < 1.0, "runtime " + fmt("%.3f ms", ms));
  if (o.pass) o.detail = "cagr = " + fmt("%.4f%%", 100 * r) + ", " + fmt("%.4f ms", ms);
  return o;
}

// Criterion 2
Outcome yearly_cpp() {
  struct Row {
    int year;
    double tp, tc, cpp;
  };
  const std::vector<Row> table{{1998, 951, 12580, 13.23},  {1999, 946, 16026, 16.94},  {2000, 1017, 16796, 16.52},
                               {2001, 1087, 17190, 15.81}, {2002, 1144, 13735, 12.01}, {2003, 1197, 17642, 14.74},
                               {2004, 1467, 19031, 12.97}, {2005, 1466, 18627, 12.71}, {2006, 1502, 17426, 11.60},
                               {2007, 1365, 15082, 11.05}, {2008, 2223, 16857, 7.58},  {2009, 3574, 24236, 6.78},
                               {2010, 3595, 17579, 4.89},  {2011, 3645, 11484, 3.15},  {2012, 2773, 4272, 1.54}};
  Outcome o;
  std::vector<double> got(table.size());
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < table.size(); ++i) got[i] = cpp(table[i].tc, table[i].tp);
  const double ms = elapsed_ms(t0);
  double worst = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double err = std::abs(got[i] - table[i].cpp);
    worst = std::max(worst, err);
    o.require(err <= 0.01, std::to_string(table[i].year) + ": " + fmt("%.4f", got[i]));
  }
  o.require(ms < 1.0, "runtime " + fmt("%.3f ms", ms));
  if (o.pass) o.detail = "15/15 within 0.01 (max error " + fmt("%.4f", worst) + "), " + fmt("%.4f ms", ms);
  return o;
}

// Criterion 3
Outcome collaboration_share() {
  Outcome o;
  const double world = sicp(3789, 27252);
  o.require(std::abs(world - 13.90) <= 0.01, "world sicp " + fmt("%.4f", world));
  const std::vector<std::array<double, 3>> blocks{{481, 4794, 10.03}, {993, 6800, 14.60}, {2315, 15658, 14.78}};
  std::string values = fmt("%.2f", world);
  for (const auto& b : blocks) {
    const double v = sicp(b[0], b[1]);
    o.require(std::abs(v - b[2]) <= 0.01, "block " + fmt("%.4f", v));
    values += " " + fmt("%.2f", v);
  }
  if (o.pass) o.detail = "sicp = " + values;
  return o;
}

// Criterion 4
Outcome relative_collaboration() {
  Outcome o;
  const double china = ricr(10.08, 13.90);
  const double indonesia = ricr(90.91, 13.90);
  const double vietnam = ricr(100.0, 13.90);
  o.require(std::abs(china - 0.73) <= 0.01, "China " + fmt("%.4f", china));
  o.require(std::abs(indonesia - 6.54) <= 0.01, "Indonesia " + fmt("%.4f", indonesia));
  o.require(std::abs(vietnam - 7.19) <= 0.01, "Vietnam " + fmt("%.4f", vietnam));
  if (o.pass) {
    o.detail = "China " + fmt("%.3f", china) + ", Indonesia " + fmt("%.3f", indonesia) + ", Vietnam " +
               fmt("%.3f", vietnam);
  }
  return o;
}

// Criterion 5
Outcome relative_growth() {
  Outcome o;
  const double india = rgi(0.19, 0.0794);
  const double china = rgi(0.15, 0.0794);
  o.require(std::abs(india - 2.39) <= 0.005, "India " + fmt("%.4f", india));
  o.require(std::abs(china - 1.89) <= 0.005, "China " + fmt("%.4f", china));
  o.require(std::abs(india - 2.44) <= 0.06, "India vs printed 2.44: " + fmt("%.4f", india));
  o.require(std::abs(china - 1.86) <= 0.06, "China vs printed 1.86: " + fmt("%.4f", china));
  if (o.pass) {
    o.detail = "India " + fmt("%.3f", india) + " (printed 2.44), China " + fmt("%.3f", china) + " (printed 1.86)";
  }
  return o;
}

double gini_pairs(const std::vector<double>& x) {
  double diff = 0.0;
  double total = 0.0;
  for (double a : x) {
    total += a;
    for (double b : x) diff += std::abs(a - b);
  }
  const double n = static_cast<double>(x.size());
  return diff / (2.0 * n * n * (total / n));
}

// Criterion 6
Outcome gini_suite() {
  Outcome o;
  std::mt19937_64 rng(20131);
  std::uniform_real_distribution<double> value(0.0, 1000.0);
  for (std::size_t n = 1; n <= 12; ++n) {
    o.require(gini(std::vector<double>(n, 3.25)) == 0.0, "equal values, n = " + std::to_string(n));
    for (double holder : {1.0, 10.0, 0.1, 6759.27, value(rng)}) {
      std::vector<double> x(n, 0.0);
      x[rng() % n] = holder;
      o.require(gini(x) == (static_cast<double>(n) - 1.0) / static_cast<double>(n),
                "single holder, n = " + std::to_string(n));
    }
  }
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    std::vector<double> x(n);
    for (auto& v : x) v = (rng() % 5 == 0) ? 0.0 : value(rng);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) x[0] = 1.0;
    const double g = gini(x);
    worst = std::max(worst, std::abs(g - gini_pairs(x)));
    o.require(std::abs(g - gini_pairs(x)) <= 1e-10, "pairwise oracle, trial " + std::to_string(trial));
    const double k = std::exp(std::uniform_real_distribution<double>(-5.0, 5.0)(rng));
    auto scaled = x;
    for (auto& v : scaled) v *= k;
    o.require(std::abs(gini(scaled) - g) <= 1e-12, "scale invariance, trial " + std::to_string(trial));
    auto shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    o.require(std::abs(gini(shuffled) - g) <= 1e-12, "permutation invariance, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "1000 random vectors, max oracle gap " + fmt("%.2e", worst);
  return o;
}

double sid_direct(const std::vector<std::int64_t>& c) {
  double num = 0.0;
  double total = 0.0;
  for (auto n : c) {
    num += static_cast<double>(n * (n - 1));
    total += static_cast<double>(n);
  }
  return 1.0 - num / (total * (total - 1.0));
}

// Criterion 7
Outcome simpson_suite() {
  Outcome o;
  for (std::int64_t n = 2; n <= 50; ++n) {
    o.require(simpson_diversity(std::vector<std::int64_t>{n}) == 0.0, "single category " + std::to_string(n));
    o.require(simpson_diversity(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1)) == 1.0,
              "singletons " + std::to_string(n));
  }
  std::mt19937_64 rng(75);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::int64_t> c(2 + rng() % 10);
    for (auto& v : c) v = static_cast<std::int64_t>(rng() % 40);
    c[0] += 1;
    c[1] += 1;
    const double s = simpson_diversity(c);
    worst = std::max(worst, std::abs(s - sid_direct(c)));
    o.require(std::abs(s - sid_direct(c)) <= 1e-12, "direct oracle, trial " + std::to_string(trial));
    auto merged = c;
    const std::size_t a = rng() % merged.size();
    std::size_t b = rng() % merged.size();
    if (b == a) b = (a + 1) % merged.size();
    merged[a] += merged[b];
    merged.erase(merged.begin() + static_cast<long>(b));
    o.require(simpson_diversity(merged) <= s + 1e-12, "merge monotonicity, trial " + std::to_string(trial));
  }
  if (o.pass) o.detail = "500 random count vectors, max oracle gap " + fmt("%.2e", worst);
  return o;
}

// Criterion 8
Outcome credit_conservation() {
  Outcome o;
  auto records = fixtures::bundled().analyzed;
  const auto ledger = build_ledger(records);
  double papers = 0.0;
  double cites = 0.0;
  for (const auto& r : records) {
    if (country_fractions(r).empty()) continue;
    papers += 1.0;
    cites += static_cast<double>(r.citations);
  }
  const double dp = std::abs(ledger.total_pub_credit() - papers);
  const double dc = std::abs(ledger.total_cite_credit() - cites);
  o.require(dp <= 1e-9, "publication credit off by " + fmt("%.3e", dp));
  o.require(dc <= 1e-9, "citation credit off by " + fmt("%.3e", dc));
  const std::string reference = ledger_csv(ledger);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    const auto shuffled = build_ledger(records);
    o.require(shuffled == ledger && ledger_csv(shuffled) == reference,
              "ledger differs after shuffle " + std::to_string(trial));
  }
  if (o.pass) {
    o.detail = fmt("%.0f", papers) + " papers / " + fmt("%.0f", cites) + " citations conserved (" +
               fmt("%.1e", std::max(dp, dc)) + "); 50 shuffles bit-identical";
  }
  return o;
}

// Connected graphs on up to 8 vertices: every labelled one up to 5 vertices,
// then random ones (mixed densities and weights) on 6 to 8 vertices.
std::vector<oracle::SmallGraph> small_graph_set(std::uint64_t seed) {
  std::vector<oracle::SmallGraph> out;
  for (int n = 1; n <= 5; ++n) {
    auto all = oracle::all_connected_graphs(n);
    out.insert(out.end(), all.begin(), all.end());
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 600; ++i) {
    const int n = 6 + i % 3;
    const double p = 0.15 + 0.7 * static_cast<double>(i % 11) / 10.0;
    out.push_back(oracle::random_connected_graph(n, p, rng, i % 2 ? 1 : 1 + i % 5));
  }
  return out;
}

// Criterion 9
Outcome betweenness_oracle() {
  Outcome o;
  const auto graphs = small_graph_set(909);
  double worst = 0.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto got = betweenness(oracle::to_country_graph(graphs[i]));
    const auto want = oracle::betweenness(graphs[i]);
    for (std::size_t v = 0; v < got.size(); ++v) worst = std::max(worst, std::abs(got[v] - want[v]));
    o.require(worst <= 1e-9, "graph " + std::to_string(i));
  }
  oracle::SmallGraph k4{4, std::vector<std::vector<int>>(4, std::vector<int>(4, 1))};
  for (int v = 0; v < 4; ++v) k4.w[v][v] = 0;
  for (double b : betweenness(oracle::to_country_graph(k4))) o.require(b == 0.0, "K4 not all zero");
  for (int n = 2; n <= 12; ++n) {
    oracle::SmallGraph star{n, std::vector<std::vector<int>>(n, std::vector<int>(n, 0))};
    for (int v = 1; v < n; ++v) star.w[0][v] = star.w[v][0] = 1;
    const double leaves = n - 1;
    o.require(betweenness(oracle::to_country_graph(star))[0] == leaves * (leaves - 1) / 2,
              "star hub, n = " + std::to_string(n));
  }
  if (o.pass) {
    o.detail = std::to_string(graphs.size()) + " graphs match enumeration (max gap " + fmt("%.1e", worst) +
               "); K4 zero; star hubs C(n-1,2)";
  }
  return o;
}

// Criterion 10
Outcome louvain_recovery() {
  Outcome o;
  oracle::SmallGraph cliques{8, std::vector<std::vector<int>>(8, std::vector<int>(8, 0))};
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) cliques.w[base + i][base + j] = cliques.w[base + j][base + i] = 1;
  cliques.w[3][4] = cliques.w[4][3] = 1;
  const auto g = oracle::to_country_graph(cliques);
  for (std::uint64_t seed = 0; seed <= 9; ++seed) {
    o.require(louvain(g, seed).community == std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1},
              "cliques not separated with seed " + std::to_string(seed));
  }
  const auto graphs = small_graph_set(1010);
  std::size_t misses = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const auto r = louvain(oracle::to_country_graph(graphs[i]), i % 10);
    const double best = oracle::best_modularity(graphs[i]);
    if (r.modularity < best - 1e-9) {
      ++misses;
      worst = std::max(worst, best - r.modularity);
    }
  }
  o.require(misses == 0, std::to_string(misses) + " of " + std::to_string(graphs.size()) +
                             " graphs below the optimum (max gap " + fmt("%.4f", worst) + ")");
  if (o.pass) {
    o.detail = "cliques split for seeds 0-9; optimum reached on " + std::to_string(graphs.size()) + " graphs";
  }
  return o;
}

// Criterion 11
Outcome layout_suite() {
  Outcome o;
  std::mt19937_64 rng(1111);
  for (int run = 0; run < 100; ++run) {
    const int n = 2 + static_cast<int>(rng() % 19);
    const double p = std::uniform_real_distribution<double>(0.1, 0.6)(rng);
    const auto g = oracle::to_country_graph(oracle::random_connected_graph(n, p, rng));
    const auto r = kamada_kawai_layout(g, static_cast<std::uint64_t>(run), 5000);
    o.require(r.final_energy <= r.initial_energy, "energy rose in run " + std::to_string(run));
  }
  CountryGraph pair;
  pair.add_vertex("CN");
  pair.add_vertex("US");
  pair.add_edge(0, 1, 3);
  const auto two = kamada_kawai_layout(pair, 0, 5000);
  // One component of diameter 1: the natural length of its edge is 1.
  const double len = std::hypot(two.positions[0].x - two.positions[1].x, two.positions[0].y - two.positions[1].y);
  o.require(std::abs(len - 1.0) <= 1e-3, "spring length " + fmt("%.6f", len));
  CountryGraph tri;
  for (const char* l : {"A", "B", "C"}) tri.add_vertex(l);
  tri.add_edge(0, 1);
  tri.add_edge(1, 2);
  tri.add_edge(0, 2);
  const auto t = kamada_kawai_layout(tri, 0, 5000);
  std::vector<double> d;
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}}) {
    d.push_back(std::hypot(t.positions[a].x - t.positions[b].x, t.positions[a].y - t.positions[b].y));
  }
  const double spread = (*std::max_element(d.begin(), d.end()) - *std::min_element(d.begin(), d.end())) /
                        *std::max_element(d.begin(), d.end());
  o.require(t.converged && spread <= 0.01, "triangle spread " + fmt("%.4f", spread));
  if (o.pass) {
    o.detail = "100 runs non-increasing; spring length " + fmt("%.6f", len) + "; triangle spread " +
               fmt("%.2e", spread);
  }
  return o;
}

// Checks every <data> element against the <key> declarations of the file.
bool graphml_valid(const std::string& xml, std::string& why) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  std::istringstream in(xml);
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    why = e.what();
    return false;
  }
  const auto& root = doc.get_child("graphml");
  std::map<std::string, std::pair<std::string, std::string>> keys;  // id -> (for, type)
  for (const auto& [tag, node] : root) {
    if (tag != "key") continue;
    keys[node.get<std::string>("<xmlattr>.id")] = {node.get<std::string>("<xmlattr>.for"),
                                                    node.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.type", '/'))};
  }
  auto check_data = [&](const pt::ptree& element, const std::string& domain) {
    for (const auto& [tag, data] : element) {
      if (tag != "data") continue;
      const auto key = data.get<std::string>("<xmlattr>.key");
      auto it = keys.find(key);
      if (it == keys.end() || it->second.first != domain) {
        why = "undeclared key " + key;
        return false;
      }
      const auto value = data.get_value<std::string>();
      try {
        std::size_t used = 0;
        if (it->second.second == "int") (void)std::stoll(value, &used);
        else if (it->second.second == "double") (void)std::stod(value, &used);
        else used = value.size();
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        why = "value '" + value + "' is not " + it->second.second;
        return false;
      }
    }
    return true;
  };
  std::set<std::string> ids;
  const auto& graph = root.get_child("graph");
  for (const auto& [tag, node] : graph) {
    if (tag == "node") {
      ids.insert(node.get<std::string>("<xmlattr>.id"));
      if (!check_data(node, "node")) return false;
    }
  }
  for (const auto& [tag, edge] : graph) {
    if (tag != "edge") continue;
    if (!ids.count(edge.get<std::string>("<xmlattr>.source")) || !ids.count(edge.get<std::string>("<xmlattr>.target"))) {
      why = "edge endpoint is not a node";
      return false;
    }
    if (!check_data(edge, "edge")) return false;
  }
  return true;
}

RunConfig bundled_config(const fs::path& out) {
  RunConfig c;
  c.corpus_path = fixtures::data_dir() / "synthetic_corpus.csv";
  c.rules_path = fixtures::data_dir() / "rules.txt";
  c.countries_path = fixtures::data_dir() / "countries.csv";
  c.output_dir = out;
  return c;
}

// Criterion 12
Outcome network_files() {
  Outcome o;
  // The bundled co-authorship graph with every analysis attached.
  auto g = build_graph(fixtures::bundled().analyzed);
  g.betweenness = betweenness(g);
  g.community = louvain(g, 0).community;
  g.position = fit_unit_square(kamada_kawai_layout(g, 0, 5000).positions);
  const std::string net = to_pajek(g);
  const std::string again = to_pajek(parse_pajek(net));
  o.require(net == again, "pajek export differs after a parse");
  std::string why;
  o.require(graphml_valid(to_graphml(g), why), "graphml: " + why);
  // The files written by the pipeline itself.
  const auto bundle = build_report(bundled_config(fs::temp_directory_path() / "unused"));
  o.require(to_pajek(parse_pajek(bundle.files.at("network.net"))) == bundle.files.at("network.net"),
            "pipeline pajek round trip");
  o.require(graphml_valid(bundle.files.at("network.graphml"), why), "pipeline graphml: " + why);
  if (o.pass) {
    o.detail = std::to_string(g.vertex_count()) + " vertices / " + std::to_string(g.edge_count()) +
               " edges round-trip byte-identical; graphml data match declared keys";
  }
  return o;
}

std::map<std::string, std::string> read_dir(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    files[entry.path().filename().string()] = read_file(entry.path());
  }
  return files;
}

// Criterion 13
Outcome end_to_end() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "scimetrics_acceptance";
  fs::remove_all(base);
  const std::string data = fixtures::data_dir().string();
  std::vector<std::map<std::string, std::string>> bundles;
  double slowest = 0.0;
  for (int run = 0; run < 2; ++run) {
    const fs::path out = base / ("run" + std::to_string(run));
    const std::string cmd = std::string("\"") + SCIMETRICS_CLI + "\" analyze -q --corpus \"" + data +
                            "/synthetic_corpus.csv\" --rules \"" + data + "/rules.txt\" --scheme regions=\"" + data +
                            "/regions.csv\" --scheme income=\"" + data + "/income.csv\" --scheme unasur=\"" + data +
                            "/group_unasur.csv\" --scheme asean=\"" + data + "/group_asean.csv\" --scheme d8=\"" +
                            data + "/group_d8.csv\" --scheme eagles=\"" + data +
                            "/group_eagles.csv\" --seed 42 --out \"" + out.string() + "\" > /dev/null";
    const auto t0 = Clock::now();
    const int rc = std::system(cmd.c_str());
    slowest = std::max(slowest, elapsed_ms(t0));
    o.require(rc == 0, "analyze exited with " + std::to_string(rc));
    if (rc != 0) return o;
    bundles.push_back(read_dir(out));
  }
  o.require(bundles[0] == bundles[1], "output bundles differ");
  o.require(slowest < 5000.0, "pipeline took " + fmt("%.0f ms", slowest));
  if (o.pass) {
    o.detail = std::to_string(bundles[0].size()) + " files byte-identical across runs; slowest run " +
               fmt("%.0f ms", slowest);
  }
  fs::remove_all(base);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC01 growth rate of the world output", growth_rate},
      {"AC02 yearly citations per paper", yearly_cpp},
      {"AC03 share of international collaboration", collaboration_share},
      {"AC04 relative international collaboration rate", relative_collaboration},
      {"AC05 relative growth index", relative_growth},
      {"AC06 gini properties", gini_suite},
      {"AC07 simpson diversity properties", simpson_suite},
      {"AC08 credit conservation and order independence", credit_conservation},
      {"AC09 betweenness against exhaustive enumeration", betweenness_oracle},
      {"AC10 community detection", louvain_recovery},
      {"AC11 spring layout", layout_suite},
      {"AC12 pajek round trip and graphml schema", network_files},
      {"AC13 end-to-end determinism and runtime", end_to_end},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double ms = elapsed_ms(t0);
    std::printf("[%s] %s: %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), ms);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}

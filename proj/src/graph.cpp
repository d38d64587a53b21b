#include <algorithm>
#include <cstdio>
#include <deque>
#include <set>
#include <sstream>

#include "scimetrics/crediting.hpp"
#include "scimetrics/error.hpp"
#include "scimetrics/network.hpp"
#include "scimetrics/text.hpp"

namespace scimetrics {

std::size_t CountryGraph::add_vertex(std::string_view label) {
  std::string key(label);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const std::size_t v = labels_.size();
  labels_.push_back(key);
  index_.emplace(std::move(key), v);
  neighbors_.emplace_back();
  return v;
}

void CountryGraph::add_edge(std::size_t a, std::size_t b, int weight) {
  if (a >= labels_.size() || b >= labels_.size()) {
    throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  }
  if (a == b) throw Error(ErrorCode::InvalidArgument, "self-loop on " + labels_[a]);
  if (weight <= 0) throw Error(ErrorCode::InvalidArgument, "edge weight must be positive");
  Edge key = std::minmax(a, b);
  auto [it, inserted] = edges_.emplace(key, 0);
  it->second += weight;
  if (inserted) {
    auto link = [](std::vector<std::size_t>& list, std::size_t v) {
      list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    };
    link(neighbors_[a], b);
    link(neighbors_[b], a);
  }
}

std::optional<std::size_t> CountryGraph::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int CountryGraph::weight(std::size_t a, std::size_t b) const {
  auto it = edges_.find(std::minmax(a, b));
  return it == edges_.end() ? 0 : it->second;
}

std::int64_t CountryGraph::total_weight() const {
  std::int64_t sum = 0;
  for (const auto& [_, w] : edges_) sum += w;
  return sum;
}

CountryGraph build_graph(std::span<const BiblioRecord> records) {
  std::vector<std::set<std::string>> country_sets;
  std::set<std::string> all;
  for (const auto& rec : records) {
    auto list = author_countries(rec);
    std::set<std::string> distinct(list.begin(), list.end());
    all.insert(distinct.begin(), distinct.end());
    if (distinct.size() >= 2) country_sets.push_back(std::move(distinct));
  }
  CountryGraph graph;
  for (const auto& c : all) graph.add_vertex(c);
  for (const auto& set : country_sets) {
    std::vector<std::size_t> ids;
    for (const auto& c : set) ids.push_back(*graph.index_of(c));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) graph.add_edge(ids[i], ids[j]);
    }
  }
  return graph;
}

CountryGraph filter_by_degree(const CountryGraph& graph, int min_degree) {
  if (min_degree < 0) throw Error(ErrorCode::InvalidArgument, "min_degree must be non-negative");
  std::vector<std::optional<std::size_t>> remap(graph.vertex_count());
  CountryGraph out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (graph.degree(v) >= static_cast<std::size_t>(min_degree)) {
      remap[v] = out.add_vertex(graph.label(v));
      if (!graph.betweenness.empty()) out.betweenness.push_back(graph.betweenness[v]);
      if (!graph.community.empty()) out.community.push_back(graph.community[v]);
      if (!graph.position.empty()) out.position.push_back(graph.position[v]);
    }
  }
  for (const auto& [e, w] : graph.edges()) {
    if (remap[e.first] && remap[e.second]) out.add_edge(*remap[e.first], *remap[e.second], w);
  }
  return out;
}

std::vector<double> betweenness(const CountryGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> centrality(n, 0.0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> preds(n);
  std::vector<double> sigma(n);
  std::vector<long> dist(n);
  std::vector<double> delta(n);
  std::deque<std::size_t> queue;

  for (std::size_t s = 0; s < n; ++s) {
    stack.clear();
    for (std::size_t v = 0; v < n; ++v) preds[v].clear();
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1L);
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      stack.push_back(v);
      for (std::size_t w : graph.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    std::fill(delta.begin(), delta.end(), 0.0);
    while (!stack.empty()) {
      const std::size_t w = stack.back();
      stack.pop_back();
      for (std::size_t v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality[w] += delta[w];
    }
  }
  for (double& c : centrality) c /= 2.0;
  return centrality;
}

double modularity(const CountryGraph& graph, std::span<const int> community) {
  if (community.size() != graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "partition size does not match the graph");
  }
  const double two_m = 2.0 * static_cast<double>(graph.total_weight());
  if (two_m == 0.0) return 0.0;
  std::map<int, double> internal;  // sum of A_ij over ordered pairs inside c
  std::map<int, double> total;     // sum of degrees in c
  for (const auto& [e, w] : graph.edges()) {
    total[community[e.first]] += w;
    total[community[e.second]] += w;
    if (community[e.first] == community[e.second]) internal[community[e.first]] += 2.0 * w;
  }
  double q = 0.0;
  for (const auto& [c, tot] : total) {
    q += internal[c] / two_m - (tot / two_m) * (tot / two_m);
  }
  return q;
}

NetworkFormat parse_network_format(std::string_view name) {
  std::string key = to_lower(name);
  if (key == "pajek" || key == "net") return NetworkFormat::pajek;
  if (key == "graphml") return NetworkFormat::graphml;
  if (key == "dot") return NetworkFormat::dot;
  throw Error(ErrorCode::InvalidArgument, "unknown network format '" + std::string(name) + "'");
}

std::string to_pajek(const CountryGraph& graph) {
  const bool with_coords = graph.position.size() == graph.vertex_count();
  std::string out = "*Vertices " + std::to_string(graph.vertex_count()) + "\n";
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    out += std::to_string(v + 1) + " \"" + graph.label(v) + "\"";
    if (with_coords) {
      out += " " + fixed(graph.position[v].x, 6) + " " + fixed(graph.position[v].y, 6);
    }
    out += "\n";
  }
  out += "*Edges\n";
  for (const auto& [e, w] : graph.edges()) {
    out += std::to_string(e.first + 1) + " " + std::to_string(e.second + 1) + " " + std::to_string(w) + "\n";
  }
  return out;
}

CountryGraph parse_pajek(std::string_view text) {
  auto lines = split(text, '\n');
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> Error {
    return Error(ErrorCode::MalformedRow, "pajek line " + std::to_string(i + 1) + ": " + msg);
  };
  auto next_content = [&]() {
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
  };

  next_content();
  if (i >= lines.size()) throw Error(ErrorCode::EmptyFile, "empty pajek file");
  std::istringstream header{std::string(trim(lines[i]))};
  std::string tag;
  std::size_t n = 0;
  if (!(header >> tag >> n) || to_lower(tag) != "*vertices") throw fail("expected *Vertices N");
  ++i;

  CountryGraph graph;
  std::vector<Point> coords;
  std::size_t with_coords = 0;
  for (std::size_t k = 0; k < n; ++k) {
    next_content();
    if (i >= lines.size()) throw fail("missing vertex lines");
    std::string_view line = trim(lines[i]);
    auto open = line.find('"');
    auto close = open == std::string_view::npos ? open : line.find('"', open + 1);
    if (close == std::string_view::npos) throw fail("vertex label must be quoted");
    std::size_t id = 0;
    std::istringstream id_stream{std::string(line.substr(0, open))};
    if (!(id_stream >> id) || id != k + 1) throw fail("vertex ids must run 1..N in order");
    graph.add_vertex(line.substr(open + 1, close - open - 1));
    std::istringstream rest{std::string(line.substr(close + 1))};
    Point p;
    if (rest >> p.x >> p.y) ++with_coords;
    coords.push_back(p);
    ++i;
  }
  if (with_coords == n && n > 0) graph.position = std::move(coords);

  next_content();
  if (i < lines.size()) {
    if (to_lower(trim(lines[i])) != "*edges") throw fail("expected *Edges");
    ++i;
    for (; i < lines.size(); ++i) {
      std::string_view line = trim(lines[i]);
      if (line.empty()) continue;
      std::istringstream in{std::string(line)};
      std::size_t a = 0, b = 0;
      int w = 1;
      if (!(in >> a >> b)) throw fail("expected 'i j [weight]'");
      if (!(in >> w)) w = 1;
      if (a < 1 || b < 1 || a > n || b > n) throw fail("edge endpoint out of range");
      graph.add_edge(a - 1, b - 1, w);
    }
  }
  return graph;
}

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string to_graphml(const CountryGraph& graph) {
  const std::size_t n = graph.vertex_count();
  const bool has_bc = graph.betweenness.size() == n;
  const bool has_comm = graph.community.size() == n;
  const bool has_pos = graph.position.size() == n;
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
      "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
      "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
      "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  if (has_bc) out += "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n";
  if (has_comm) out += "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
  if (has_pos) {
    out += "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n";
    out += "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n";
  }
  out += "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n";
  out += "  <graph id=\"countries\" edgedefault=\"undirected\">\n";
  for (std::size_t v = 0; v < n; ++v) {
    out += "    <node id=\"n" + std::to_string(v) + "\">";
    out += "<data key=\"label\">" + xml_escape(graph.label(v)) + "</data>";
    if (has_bc) out += "<data key=\"betweenness\">" + fixed(graph.betweenness[v], 6) + "</data>";
    if (has_comm) out += "<data key=\"community\">" + std::to_string(graph.community[v]) + "</data>";
    if (has_pos) {
      out += "<data key=\"x\">" + fixed(graph.position[v].x, 6) + "</data>";
      out += "<data key=\"y\">" + fixed(graph.position[v].y, 6) + "</data>";
    }
    out += "</node>\n";
  }
  std::size_t e_id = 0;
  for (const auto& [e, w] : graph.edges()) {
    out += "    <edge id=\"e" + std::to_string(e_id++) + "\" source=\"n" + std::to_string(e.first) +
           "\" target=\"n" + std::to_string(e.second) + "\"><data key=\"weight\">" +
           std::to_string(w) + "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

std::string to_dot(const CountryGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::string out = "graph countries {\n";
  for (std::size_t v = 0; v < n; ++v) {
    out += "  \"" + graph.label(v) + "\"";
    std::vector<std::string> attrs;
    if (graph.community.size() == n) attrs.push_back("community=" + std::to_string(graph.community[v]));
    if (graph.betweenness.size() == n) attrs.push_back("betweenness=" + fixed(graph.betweenness[v], 6));
    if (graph.position.size() == n) {
      attrs.push_back("pos=\"" + fixed(graph.position[v].x, 6) + "," + fixed(graph.position[v].y, 6) + "\"");
    }
    if (!attrs.empty()) {
      out += " [";
      for (std::size_t k = 0; k < attrs.size(); ++k) out += (k ? ", " : "") + attrs[k];
      out += "]";
    }
    out += ";\n";
  }
  for (const auto& [e, w] : graph.edges()) {
    out += "  \"" + graph.label(e.first) + "\" -- \"" + graph.label(e.second) + "\" [weight=" +
           std::to_string(w) + "];\n";
  }
  out += "}\n";
  return out;
}

void export_network(const CountryGraph& graph, NetworkFormat format, const std::filesystem::path& path) {
  switch (format) {
    case NetworkFormat::pajek: write_file(path, to_pajek(graph)); break;
    case NetworkFormat::graphml: write_file(path, to_graphml(graph)); break;
    case NetworkFormat::dot: write_file(path, to_dot(graph)); break;
  }
}

}  // namespace scimetrics

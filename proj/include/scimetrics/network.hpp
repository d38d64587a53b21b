#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scimetrics/corpus.hpp"

namespace scimetrics {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

/// Weighted undirected co-authorship graph between countries. No self-loops;
/// weights count co-authored papers. Vertex attribute vectors are either
/// empty (not computed) or sized to vertex_count().
class CountryGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;  // first < second

  CountryGraph() = default;

  /// Returns the index of an existing vertex with this label if there is one.
  std::size_t add_vertex(std::string_view label);
  /// Adds `weight` to edge {a, b}. Throws InvalidArgument on a self-loop or a
  /// non-positive weight.
  void add_edge(std::size_t a, std::size_t b, int weight = 1);

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  const std::map<Edge, int>& edges() const { return edges_; }
  int weight(std::size_t a, std::size_t b) const;  // 0 when absent
  /// Number of incident links, ignoring weights.
  std::size_t degree(std::size_t v) const { return neighbors_.at(v).size(); }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return neighbors_.at(v); }
  std::int64_t total_weight() const;

  std::vector<double> betweenness;
  std::vector<int> community;
  std::vector<Point> position;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<Edge, int> edges_;
  std::vector<std::vector<std::size_t>> neighbors_;  // sorted
};

/// Vertices are all countries found in the records, in code order. Each
/// record with distinct country set C adds one to every pair in C.
CountryGraph build_graph(std::span<const BiblioRecord> records);

/// Keeps vertices whose degree in `graph` is at least `min_degree`, with the
/// edges among them. Degrees are not recomputed after removal.
CountryGraph filter_by_degree(const CountryGraph& graph, int min_degree);

/// Unnormalized shortest-path betweenness on unweighted paths (Brandes),
/// halved for the undirected graph.
std::vector<double> betweenness(const CountryGraph& graph);

/// Newman modularity of a partition on the weighted graph. Zero for a graph
/// without edges.
double modularity(const CountryGraph& graph, std::span<const int> community);

struct LouvainResult {
  std::vector<int> community;           // per vertex, canonical ids
  double modularity = 0.0;              // of `community`
  std::vector<double> level_modularity;  // after each aggregation level
};

/// Multi-level greedy modularity optimization. Vertex visiting order is
/// shuffled with `seed`. Community ids are numbered in order of each
/// community's smallest member label.
LouvainResult louvain(const CountryGraph& graph, std::uint64_t seed);

inline constexpr double kLayoutTolerance = 1e-4;

struct LayoutResult {
  std::vector<Point> positions;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Kamada-Kawai spring layout with K = 1 and the desirable edge length chosen
/// so each component's diameter is one. Connected components are laid out
/// separately and packed left to right. Throws NonPositiveIterations.
LayoutResult kamada_kawai_layout(const CountryGraph& graph, std::uint64_t seed, int max_iter);

/// Spring energy sum_{i<j} k_ij (|p_i - p_j| - L d_ij)^2 with the same
/// constants the layout uses, summed over connected components.
double layout_energy(const CountryGraph& graph, std::span<const Point> positions);

/// Centers positions in the unit square and scales the larger bounding-box
/// side to 0.5 (a lone vertex lands at the center).
std::vector<Point> fit_unit_square(std::span<const Point> positions);

enum class NetworkFormat { pajek, graphml, dot };
NetworkFormat parse_network_format(std::string_view name);

std::string to_pajek(const CountryGraph& graph);
CountryGraph parse_pajek(std::string_view text);
std::string to_graphml(const CountryGraph& graph);
std::string to_dot(const CountryGraph& graph);

/// Writes the graph in the requested format. Throws IoFailure.
void export_network(const CountryGraph& graph, NetworkFormat format, const std::filesystem::path& path);

}  // namespace scimetrics

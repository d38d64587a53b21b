#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "scimetrics/network.hpp"

namespace scimetrics {

namespace {

constexpr double kMinGain = 1e-7;
// Independent runs per call; the best partition is kept.
constexpr std::size_t kMaxPerturbations = 64;
constexpr int kRestarts = 8;

// Symmetric weighted graph for one aggregation level. `self` holds A_ii, the
// summed weight of everything collapsed into the node (each internal edge
// counted from both ends).
struct LevelGraph {
  std::vector<std::vector<std::pair<std::size_t, double>>> adj;  // excludes self
  std::vector<double> self;
  std::vector<double> degree;  // k_i = self_i + sum of adj weights
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }
};

LevelGraph from_country_graph(const CountryGraph& g) {
  LevelGraph lg;
  const std::size_t n = g.vertex_count();
  lg.adj.resize(n);
  lg.self.assign(n, 0.0);
  lg.degree.assign(n, 0.0);
  for (const auto& [e, w] : g.edges()) {
    lg.adj[e.first].emplace_back(e.second, w);
    lg.adj[e.second].emplace_back(e.first, w);
    lg.degree[e.first] += w;
    lg.degree[e.second] += w;
    lg.two_m += 2.0 * w;
  }
  return lg;
}

double level_modularity(const LevelGraph& g, const std::vector<std::size_t>& comm) {
  std::vector<double> in(g.size(), 0.0);
  std::vector<double> tot(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    tot[comm[i]] += g.degree[i];
    in[comm[i]] += g.self[i];
    for (const auto& [j, w] : g.adj[i]) {
      if (comm[j] == comm[i]) in[comm[i]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    if (tot[c] > 0) q += in[c] / g.two_m - (tot[c] / g.two_m) * (tot[c] / g.two_m);
  }
  return q;
}

void shuffle(std::vector<std::size_t>& order, std::mt19937_64& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
}

// Local moving phase. Returns true if any node changed community.
bool move_nodes(const LevelGraph& g, std::vector<std::size_t>& comm, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) tot[comm[i]] += g.degree[i];

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<double> link_weight(n, 0.0);
  std::vector<std::size_t> touched;
  bool any_move = false;
  double q = level_modularity(g, comm);

  while (true) {
    bool moved = false;
    for (std::size_t i : order) {
      const std::size_t own = comm[i];
      touched.clear();
      touched.push_back(own);
      link_weight[own] = 0.0;
      for (const auto& [j, w] : g.adj[i]) {
        const std::size_t c = comm[j];
        if (link_weight[c] == 0.0 && std::find(touched.begin(), touched.end(), c) == touched.end()) {
          touched.push_back(c);
        }
        link_weight[c] += w;
      }
      tot[own] -= g.degree[i];

      auto gain = [&](std::size_t c) { return link_weight[c] - tot[c] * g.degree[i] / g.two_m; };
      std::size_t best = own;
      double best_gain = gain(own);
      for (std::size_t c : touched) {
        const double gc = gain(c);
        if (gc > best_gain) {
          best_gain = gc;
          best = c;
        }
      }
      tot[best] += g.degree[i];
      if (best != own) {
        comm[i] = best;
        moved = true;
      }
      for (std::size_t c : touched) link_weight[c] = 0.0;
    }
    if (!moved) break;
    any_move = true;
    const double q_new = level_modularity(g, comm);
    const bool small = q_new - q < kMinGain;
    q = q_new;
    if (small) break;
  }
  return any_move;
}

// Renumbers communities 0..k-1 in order of first appearance.
std::size_t renumber(std::vector<std::size_t>& comm) {
  std::vector<std::size_t> id(comm.size(), SIZE_MAX);
  std::size_t next = 0;
  for (auto& c : comm) {
    if (id[c] == SIZE_MAX) id[c] = next++;
    c = id[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::size_t>& comm, std::size_t k) {
  LevelGraph out;
  out.adj.resize(k);
  out.self.assign(k, 0.0);
  out.degree.assign(k, 0.0);
  out.two_m = g.two_m;
  std::vector<std::map<std::size_t, double>> links(k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::size_t ci = comm[i];
    out.self[ci] += g.self[i];
    out.degree[ci] += g.degree[i];
    for (const auto& [j, w] : g.adj[i]) {
      const std::size_t cj = comm[j];
      if (cj == ci) out.self[ci] += w;
      else links[ci][cj] += w;
    }
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (const auto& [d, w] : links[c]) out.adj[c].emplace_back(d, w);
  }
  return out;
}

// Kernighan-Lin style pass on the original vertices: every vertex is moved
// once, each time taking the best available move even when it lowers Q (to a
// neighbouring community or a new one), then the sequence is rolled back to
// its best prefix. Escapes optima that need several vertices to move together.
bool refine(const LevelGraph& g, std::vector<std::size_t>& comm) {
  const std::size_t n = g.size();
  std::vector<double> tot(n, 0.0);
  std::vector<std::size_t> members(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    tot[comm[i]] += g.degree[i];
    ++members[comm[i]];
  }
  std::vector<char> locked(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> undo;  // vertex, previous community
  std::vector<double> link_weight(n, 0.0);
  std::vector<std::size_t> touched;
  double cumulative = 0.0;
  double best_cumulative = 0.0;
  std::size_t best_prefix = 0;

  auto empty_community = [&]() {
    return static_cast<std::size_t>(std::find(members.begin(), members.end(), 0) - members.begin());
  };

  for (std::size_t step = 0; step < n; ++step) {
    double best_delta = -std::numeric_limits<double>::infinity();
    std::size_t best_vertex = n;
    std::size_t best_target = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (locked[i]) continue;
      const std::size_t own = comm[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        const std::size_t c = comm[j];
        if (std::find(touched.begin(), touched.end(), c) == touched.end()) touched.push_back(c);
        link_weight[c] += w;
      }
      const double k = g.degree[i];
      auto delta = [&](std::size_t c, double tot_c) {
        return 2.0 * (link_weight[c] - link_weight[own]) / g.two_m -
               2.0 * k * (tot_c - tot[own] + k) / (g.two_m * g.two_m);
      };
      for (std::size_t c : touched) {
        if (c == own) continue;
        const double d = delta(c, tot[c]);
        if (d > best_delta) {
          best_delta = d;
          best_vertex = i;
          best_target = c;
        }
      }
      if (tot[own] > k) {
        // Leaving for a community of its own. Only meaningful when not alone.
        const double d = -2.0 * link_weight[own] / g.two_m - 2.0 * k * (k - tot[own]) / (g.two_m * g.two_m);
        if (d > best_delta) {
          best_delta = d;
          best_vertex = i;
          best_target = n;
        }
      }
      for (std::size_t c : touched) link_weight[c] = 0.0;
      link_weight[own] = 0.0;
    }
    if (best_vertex == n) break;
    if (best_target == n) best_target = empty_community();
    if (best_target == n) break;
    const std::size_t own = comm[best_vertex];
    undo.emplace_back(best_vertex, own);
    tot[own] -= g.degree[best_vertex];
    tot[best_target] += g.degree[best_vertex];
    --members[own];
    ++members[best_target];
    comm[best_vertex] = best_target;
    locked[best_vertex] = 1;
    cumulative += best_delta;
    if (cumulative > best_cumulative + kMinGain) {
      best_cumulative = cumulative;
      best_prefix = undo.size();
    }
  }
  while (undo.size() > best_prefix) {
    comm[undo.back().first] = undo.back().second;
    undo.pop_back();
  }
  return best_prefix > 0;
}

struct Run {
  std::vector<std::size_t> membership;
  double modularity = 0.0;
  std::vector<double> level_modularity;
};

// Tries merging each pair of linked communities and refining the vertices
// afterwards; applies the first trial that raises Q.
bool merge_and_refine(const LevelGraph& g, std::vector<std::size_t>& comm) {
  const double q = level_modularity(g, comm);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& [j, w] : g.adj[i]) {
      if (comm[i] < comm[j]) pairs.emplace(comm[i], comm[j]);
    }
  }
  for (const auto& [a, b] : pairs) {
    std::vector<std::size_t> trial = comm;
    for (auto& c : trial) {
      if (c == b) c = a;
    }
    while (refine(g, trial)) {
    }
    if (level_modularity(g, trial) - q >= kMinGain) {
      comm = std::move(trial);
      return true;
    }
  }
  return false;
}

void polish(const LevelGraph& g, std::vector<std::size_t>& comm) {
  while (true) {
    while (refine(g, comm)) {
    }
    if (!merge_and_refine(g, comm)) break;
  }
}

Run run_once(const LevelGraph& base, std::mt19937_64& rng) {
  Run run;
  run.membership.resize(base.size());
  std::iota(run.membership.begin(), run.membership.end(), 0);
  double q = level_modularity(base, run.membership);
  while (true) {
    // Coarsen, starting from the current partition. maps[l] sends the nodes
    // of graphs[l] to the nodes of graphs[l + 1].
    std::vector<LevelGraph> graphs{base};
    std::vector<std::vector<std::size_t>> maps;
    std::vector<std::size_t> start = run.membership;
    std::size_t k = renumber(start);
    graphs.push_back(aggregate(base, start, k));
    maps.push_back(std::move(start));
    double level_q = q;
    while (true) {
      const LevelGraph& top = graphs.back();
      std::vector<std::size_t> comm(top.size());
      std::iota(comm.begin(), comm.end(), 0);
      const bool moved = move_nodes(top, comm, rng);
      const double q_new = level_modularity(top, comm);
      if (!moved || q_new - level_q < kMinGain) break;
      k = renumber(comm);
      run.level_modularity.push_back(q_new);
      level_q = q_new;
      graphs.push_back(aggregate(top, comm, k));
      maps.push_back(std::move(comm));
    }

    // Uncoarsen, refining the projected partition on every level.
    std::vector<std::size_t> comm(graphs.back().size());
    std::iota(comm.begin(), comm.end(), 0);
    for (std::size_t l = graphs.size(); l-- > 0;) {
      if (l + 1 < graphs.size()) {
        std::vector<std::size_t> below(graphs[l].size());
        for (std::size_t v = 0; v < below.size(); ++v) below[v] = comm[maps[l][v]];
        comm = std::move(below);
      }
      while (refine(graphs[l], comm)) {
      }
    }
    polish(base, comm);
    const double q_new = level_modularity(base, comm);
    if (q_new - q < kMinGain) {
      if (q_new > q) run.membership = std::move(comm);
      break;
    }
    run.membership = std::move(comm);
    if (q_new - level_q >= kMinGain) run.level_modularity.push_back(q_new);
    q = q_new;
  }
  run.modularity = level_modularity(base, run.membership);
  return run;
}

// Perturbation search around a converged partition: a few vertices are sent
// to a random neighbour's community or to a new one, the result is refined
// and kept only if Q rises.
void perturb(const LevelGraph& g, Run& run, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  if (n < 3) return;
  const int rounds = static_cast<int>(std::min<std::size_t>(4 * n, kMaxPerturbations));
  for (int r = 0; r < rounds; ++r) {
    std::vector<std::size_t> trial = run.membership;
    const std::size_t kicks = 2 + rng() % 2;
    for (std::size_t t = 0; t < kicks; ++t) {
      const std::size_t v = rng() % n;
      if (g.adj[v].empty()) continue;
      if (rng() % 2 == 0) {
        trial[v] = trial[g.adj[v][rng() % g.adj[v].size()].first];
      } else {
        std::vector<char> used(n, 0);
        for (std::size_t c : trial) used[c] = 1;
        const auto fresh = static_cast<std::size_t>(std::find(used.begin(), used.end(), 0) - used.begin());
        if (fresh < n) trial[v] = fresh;
      }
    }
    while (refine(g, trial)) {
    }
    const double q = level_modularity(g, trial);
    if (q - run.modularity >= kMinGain) {
      run.membership = std::move(trial);
      run.modularity = q;
      run.level_modularity.push_back(q);
    }
  }
}

}  // namespace

LouvainResult louvain(const CountryGraph& graph, std::uint64_t seed) {
  const std::size_t n = graph.vertex_count();
  LouvainResult result;
  std::vector<std::size_t> membership(n);
  std::iota(membership.begin(), membership.end(), 0);

  if (graph.edge_count() > 0) {
    std::mt19937_64 rng(seed);
    const LevelGraph base = from_country_graph(graph);
    Run best;
    for (int r = 0; r < kRestarts; ++r) {
      Run run = run_once(base, rng);
      perturb(base, run, rng);
      if (r == 0 || run.modularity > best.modularity + kMinGain) best = std::move(run);
    }
    membership = std::move(best.membership);
    result.level_modularity = std::move(best.level_modularity);
  }

  // Canonical ids: order communities by their smallest member label.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return graph.label(a) < graph.label(b); });
  std::map<std::size_t, int> canonical;
  for (std::size_t v : order) canonical.emplace(membership[v], static_cast<int>(canonical.size()));
  result.community.resize(n);
  for (std::size_t v = 0; v < n; ++v) result.community[v] = canonical.at(membership[v]);
  result.modularity = modularity(graph, result.community);
  return result;
}

}  // namespace scimetrics

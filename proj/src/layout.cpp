#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include "scimetrics/error.hpp"
#include "scimetrics/network.hpp"

namespace scimetrics {

namespace {

constexpr double kSpringConstant = 1.0;
constexpr double kMinDistance = 1e-9;

std::vector<std::vector<std::size_t>> components(const CountryGraph& g) {
  std::vector<int> seen(g.vertex_count(), 0);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (std::size_t w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Spring system of one connected component, in local indices.
struct Springs {
  std::size_t n = 0;
  std::vector<double> length;     // L * d_ij
  std::vector<double> stiffness;  // K / d_ij^2

  double l(std::size_t i, std::size_t j) const { return length[i * n + j]; }
  double k(std::size_t i, std::size_t j) const { return stiffness[i * n + j]; }
};

Springs make_springs(const CountryGraph& g, const std::vector<std::size_t>& comp) {
  Springs s;
  s.n = comp.size();
  std::vector<std::size_t> local(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;

  std::vector<int> dist(s.n * s.n, -1);
  int max_d = 0;
  for (std::size_t src = 0; src < s.n; ++src) {
    int* row = &dist[src * s.n];
    row[src] = 0;
    std::deque<std::size_t> queue{src};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w_global : g.neighbors(comp[v])) {
        std::size_t w = local[w_global];
        if (row[w] < 0) {
          row[w] = row[v] + 1;
          max_d = std::max(max_d, row[w]);
          queue.push_back(w);
        }
      }
    }
  }
  const double edge_length = max_d > 0 ? 1.0 / max_d : 1.0;
  s.length.assign(s.n * s.n, 0.0);
  s.stiffness.assign(s.n * s.n, 0.0);
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = 0; j < s.n; ++j) {
      if (i == j) continue;
      const double d = dist[i * s.n + j];
      s.length[i * s.n + j] = edge_length * d;
      s.stiffness[i * s.n + j] = kSpringConstant / (d * d);
    }
  }
  return s;
}

double energy(const Springs& s, const std::vector<Point>& p) {
  double e = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t j = i + 1; j < s.n; ++j) {
      const double r = std::hypot(p[i].x - p[j].x, p[i].y - p[j].y) - s.l(i, j);
      e += s.k(i, j) * r * r;
    }
  }
  return e;
}

// Terms of the energy that involve vertex m at position q.
double vertex_energy(const Springs& s, const std::vector<Point>& p, std::size_t m, Point q) {
  double e = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (i == m) continue;
    const double r = std::hypot(q.x - p[i].x, q.y - p[i].y) - s.l(m, i);
    e += s.k(m, i) * r * r;
  }
  return e;
}

struct Derivatives {
  double gx = 0, gy = 0;     // gradient
  double hxx = 0, hxy = 0, hyy = 0;  // Hessian
};

Derivatives derivatives(const Springs& s, const std::vector<Point>& p, std::size_t m) {
  Derivatives d;
  for (std::size_t i = 0; i < s.n; ++i) {
    if (i == m) continue;
    const double dx = p[m].x - p[i].x;
    const double dy = p[m].y - p[i].y;
    const double dist = std::max(std::hypot(dx, dy), kMinDistance);
    const double k = 2.0 * s.k(m, i);
    const double l = s.l(m, i);
    const double d3 = dist * dist * dist;
    d.gx += k * (dx - l * dx / dist);
    d.gy += k * (dy - l * dy / dist);
    d.hxx += k * (1.0 - l * dy * dy / d3);
    d.hyy += k * (1.0 - l * dx * dx / d3);
    d.hxy += k * (l * dx * dy / d3);
  }
  return d;
}

// Tries the Newton step, then plain gradient steps, halving until the local
// energy drops. Returns false when no decreasing step was found.
bool relax_vertex(const Springs& s, std::vector<Point>& p, std::size_t m, const Derivatives& d) {
  const double before = vertex_energy(s, p, m, p[m]);
  std::vector<Point> directions;
  const double det = d.hxx * d.hyy - d.hxy * d.hxy;
  if (det > 0 && d.hxx > 0) {
    directions.push_back({(-d.hyy * d.gx + d.hxy * d.gy) / det, (d.hxy * d.gx - d.hxx * d.gy) / det});
  }
  const double gnorm = std::hypot(d.gx, d.gy);
  const double scale = d.hxx + d.hyy > 0 ? 2.0 / (d.hxx + d.hyy) : 1.0 / std::max(gnorm, 1.0);
  directions.push_back({-d.gx * scale, -d.gy * scale});

  for (const Point& dir : directions) {
    double t = 1.0;
    for (int halving = 0; halving < 40; ++halving, t *= 0.5) {
      Point q{p[m].x + t * dir.x, p[m].y + t * dir.y};
      if (vertex_energy(s, p, m, q) < before) {
        p[m] = q;
        return true;
      }
    }
  }
  return false;
}

struct ComponentLayout {
  std::vector<Point> p;
  double initial = 0.0;
  double final = 0.0;
  int iterations = 0;
  bool converged = false;
};

ComponentLayout layout_component(const Springs& s, std::mt19937_64& rng, int max_iter) {
  ComponentLayout out;
  out.p.resize(s.n);
  if (s.n == 1) {
    out.converged = true;
    return out;
  }
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (std::size_t i = 0; i < s.n; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(s.n);
    out.p[i] = {0.5 * std::cos(angle) + 0.05 * (uniform() - 0.5),
                0.5 * std::sin(angle) + 0.05 * (uniform() - 0.5)};
  }
  out.initial = energy(s, out.p);

  std::vector<Derivatives> deriv(s.n);
  for (std::size_t i = 0; i < s.n; ++i) deriv[i] = derivatives(s, out.p, i);

  for (out.iterations = 0; out.iterations < max_iter; ++out.iterations) {
    std::size_t m = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < s.n; ++i) {
      const double norm = std::hypot(deriv[i].gx, deriv[i].gy);
      if (norm > best) {
        best = norm;
        m = i;
      }
    }
    if (best < kLayoutTolerance) {
      out.converged = true;
      break;
    }
    if (!relax_vertex(s, out.p, m, deriv[m])) break;
    // Moving m changes the gradient of every vertex; refresh them all.
    for (std::size_t i = 0; i < s.n; ++i) deriv[i] = derivatives(s, out.p, i);
  }
  out.final = energy(s, out.p);
  return out;
}

}  // namespace

LayoutResult kamada_kawai_layout(const CountryGraph& graph, std::uint64_t seed, int max_iter) {
  if (max_iter <= 0) throw Error(ErrorCode::NonPositiveIterations, "max_iter must be positive");
  LayoutResult result;
  result.positions.resize(graph.vertex_count());
  result.converged = true;
  std::mt19937_64 rng(seed);
  double offset = 0.0;
  for (const auto& comp : components(graph)) {
    Springs springs = make_springs(graph, comp);
    ComponentLayout c = layout_component(springs, rng, max_iter);
    result.initial_energy += c.initial;
    result.final_energy += c.final;
    result.iterations += c.iterations;
    result.converged = result.converged && c.converged;

    double min_x = std::numeric_limits<double>::max(), max_x = -min_x, min_y = min_x;
    for (const auto& p : c.p) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
    }
    for (std::size_t i = 0; i < comp.size(); ++i) {
      result.positions[comp[i]] = {c.p[i].x - min_x + offset, c.p[i].y - min_y};
    }
    offset += (max_x - min_x) + 0.25;
  }
  return result;
}

double layout_energy(const CountryGraph& graph, std::span<const Point> positions) {
  if (positions.size() != graph.vertex_count()) {
    throw Error(ErrorCode::InvalidArgument, "one position per vertex required");
  }
  double e = 0.0;
  for (const auto& comp : components(graph)) {
    Springs s = make_springs(graph, comp);
    std::vector<Point> p;
    for (std::size_t v : comp) p.push_back(positions[v]);
    e += energy(s, p);
  }
  return e;
}

std::vector<Point> fit_unit_square(std::span<const Point> positions) {
  std::vector<Point> out(positions.begin(), positions.end());
  if (out.empty()) return out;
  double min_x = out[0].x, max_x = out[0].x, min_y = out[0].y, max_y = out[0].y;
  for (const auto& p : out) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  const double scale = extent > 0 ? 0.5 / extent : 0.0;
  const double cx = 0.5 * (min_x + max_x);
  const double cy = 0.5 * (min_y + max_y);
  for (auto& p : out) p = {0.5 + (p.x - cx) * scale, 0.5 + (p.y - cy) * scale};
  return out;
}

}  // namespace scimetrics

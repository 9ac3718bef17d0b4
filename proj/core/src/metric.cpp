#include "randmatch/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <stdexcept>

namespace randmatch {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Cheap axioms for an explicit matrix; triangle is deliberately not here.
void check_matrix_axioms(int n, const std::vector<double>& d) {
  require(n >= 1, "matrix instance needs n >= 1");
  require(d.size() == static_cast<size_t>(n) * n, "matrix size must be n*n");
  for (int i = 0; i < n; ++i) {
    require(d[static_cast<size_t>(i) * n + i] == 0.0, "matrix diagonal must be zero");
    for (int j = i + 1; j < n; ++j) {
      const double a = d[static_cast<size_t>(i) * n + j];
      const double b = d[static_cast<size_t>(j) * n + i];
      require(std::isfinite(a) && a > 0.0, "off-diagonal distances must be finite and positive");
      require(a == b, "matrix must be symmetric");
    }
  }
}

}  // namespace

MetricInstance MetricInstance::explicit_matrix(int n, std::vector<double> d) {
  check_matrix_axioms(n, d);
  MetricInstance m;
  m.n_ = n;
  m.kind_ = Kind::explicit_matrix;
  m.matrix_ = std::make_shared<const MatrixData>(MatrixData{n, std::move(d)});
  return m;
}

MetricInstance MetricInstance::euclidean(int n, int dim, std::vector<double> coords,
                                         Norm norm) {
  require(n >= 1, "point instance needs n >= 1");
  require(dim >= 1, "point instance needs dim >= 1");
  require(coords.size() == static_cast<size_t>(n) * dim, "coords size must be n*dim");
  for (double c : coords) require(std::isfinite(c), "coordinates must be finite");
  // Coincident points would make d(x,y) = 0 for x != y, which is not a metric.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool same = true;
      for (int k = 0; k < dim && same; ++k)
        same = coords[static_cast<size_t>(i) * dim + k] ==
               coords[static_cast<size_t>(j) * dim + k];
      require(!same, "points must be pairwise distinct");
    }
  MetricInstance m;
  m.n_ = n;
  m.kind_ = Kind::euclidean;
  m.euclidean_ =
      std::make_shared<const EuclideanData>(EuclideanData{n, dim, std::move(coords), norm});
  return m;
}

MetricInstance MetricInstance::discrete(int n) {
  require(n >= 1, "discrete instance needs n >= 1");
  MetricInstance m;
  m.n_ = n;
  m.kind_ = Kind::discrete;
  return m;
}

MetricInstance MetricInstance::graph(int n, std::vector<std::pair<int, int>> edges,
                                     bool precompute_all_pairs) {
  require(n >= 1, "graph instance needs n >= 1");
  for (auto& [u, v] : edges) {
    require(u >= 1 && u <= n && v >= 1 && v <= n, "edge endpoint out of range");
    require(u != v, "self-loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  GraphData g;
  g.n = n;
  g.edges = std::move(edges);
  std::vector<int> degree(n + 1, 0);
  for (auto [u, v] : g.edges) {
    ++degree[u];
    ++degree[v];
  }
  g.adj_offsets.assign(n + 2, 0);
  for (int v = 1; v <= n; ++v) g.adj_offsets[v + 1] = g.adj_offsets[v] + degree[v];
  g.adj.resize(g.adj_offsets[n + 1]);
  std::vector<int> cursor(g.adj_offsets.begin(), g.adj_offsets.end());
  for (auto [u, v] : g.edges) {
    g.adj[cursor[u]++] = v;
    g.adj[cursor[v]++] = u;
  }

  // Connectivity: hop distances double as the metric, so every pair must
  // have one. bfs_hop_distances throws on an unreachable vertex.
  bfs_hop_distances(g, 1);

  if (precompute_all_pairs) {
    auto table = std::make_shared<std::vector<std::uint16_t>>(
        static_cast<size_t>(n) * n, 0);
    for (int s = 1; s <= n; ++s) {
      std::vector<int> row = bfs_hop_distances(g, s);
      for (int t = 1; t <= n; ++t) {
        require(row[t] <= std::numeric_limits<std::uint16_t>::max(),
                "graph diameter too large for the all-pairs table");
        (*table)[static_cast<size_t>(s - 1) * n + (t - 1)] =
            static_cast<std::uint16_t>(row[t]);
      }
    }
    g.all_pairs = std::move(table);
  }

  MetricInstance m;
  m.n_ = n;
  m.kind_ = Kind::graph;
  m.graph_ = std::make_shared<const GraphData>(std::move(g));
  return m;
}

const MetricInstance::MatrixData& MetricInstance::matrix_data() const {
  if (!matrix_) throw std::logic_error("not an explicit-matrix instance");
  return *matrix_;
}
const MetricInstance::EuclideanData& MetricInstance::euclidean_data() const {
  if (!euclidean_) throw std::logic_error("not a euclidean instance");
  return *euclidean_;
}
const MetricInstance::GraphData& MetricInstance::graph_data() const {
  if (!graph_) throw std::logic_error("not a graph instance");
  return *graph_;
}

const char* kind_name(MetricInstance::Kind k) {
  switch (k) {
    case MetricInstance::Kind::explicit_matrix: return "matrix";
    case MetricInstance::Kind::euclidean: return "points";
    case MetricInstance::Kind::discrete: return "discrete";
    case MetricInstance::Kind::graph: return "graph";
  }
  return "?";
}

std::vector<int> bfs_hop_distances(const MetricInstance::GraphData& g, PointId s) {
  std::vector<int> dist(g.n + 1, -1);
  std::deque<int> queue;
  dist[s] = 0;
  queue.push_back(s);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int i = g.adj_offsets[u]; i < g.adj_offsets[u + 1]; ++i) {
      const int v = g.adj[i];
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (int v = 1; v <= g.n; ++v)
    if (dist[v] < 0) throw std::invalid_argument("graph must be connected");
  return dist;
}

namespace {

double point_distance(const MetricInstance::EuclideanData& e, PointId x, PointId y) {
  const double* a = e.coords.data() + static_cast<size_t>(x - 1) * e.dim;
  const double* b = e.coords.data() + static_cast<size_t>(y - 1) * e.dim;
  switch (e.norm) {
    case Norm::l1: {
      double s = 0;
      for (int k = 0; k < e.dim; ++k) s += std::abs(a[k] - b[k]);
      return s;
    }
    case Norm::l2: {
      double s = 0;
      for (int k = 0; k < e.dim; ++k) {
        const double t = a[k] - b[k];
        s += t * t;
      }
      return std::sqrt(s);
    }
    case Norm::linf: {
      double s = 0;
      for (int k = 0; k < e.dim; ++k) s = std::max(s, std::abs(a[k] - b[k]));
      return s;
    }
  }
  return 0;
}

}  // namespace

std::vector<double> materialize_matrix(const MetricInstance& inst) {
  const int n = inst.size();
  std::vector<double> d(static_cast<size_t>(n) * n, 0.0);
  switch (inst.kind()) {
    case MetricInstance::Kind::explicit_matrix:
      return inst.matrix_data().d;
    case MetricInstance::Kind::discrete:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) d[static_cast<size_t>(i) * n + j] = 1.0;
      return d;
    case MetricInstance::Kind::euclidean: {
      const auto& e = inst.euclidean_data();
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
          const double v = point_distance(e, i, j);
          d[static_cast<size_t>(i - 1) * n + (j - 1)] = v;
          d[static_cast<size_t>(j - 1) * n + (i - 1)] = v;
        }
      return d;
    }
    case MetricInstance::Kind::graph: {
      const auto& g = inst.graph_data();
      if (g.all_pairs) {
        const auto& t = *g.all_pairs;
        for (size_t i = 0; i < t.size(); ++i) d[i] = static_cast<double>(t[i]);
        return d;
      }
      for (int s = 1; s <= n; ++s) {
        std::vector<int> row = bfs_hop_distances(g, s);
        for (int t = 1; t <= n; ++t)
          d[static_cast<size_t>(s - 1) * n + (t - 1)] = static_cast<double>(row[t]);
      }
      return d;
    }
  }
  return d;
}

DistanceOracle::DistanceOracle(const MetricInstance& inst, bool trace) : inst_(&inst) {
  ledger_.tracing = trace;
  if (inst.kind() == MetricInstance::Kind::graph && !inst.graph_data().all_pairs)
    bfs_cache_.resize(inst.size());
}

const std::vector<int>& DistanceOracle::graph_row(PointId s) {
  auto& row = bfs_cache_[s - 1];
  if (row.empty()) row = bfs_hop_distances(inst_->graph_data(), s);
  return row;
}

double DistanceOracle::raw_distance(PointId x, PointId y) {
  switch (inst_->kind()) {
    case MetricInstance::Kind::explicit_matrix:
      return inst_->matrix_data().d[static_cast<size_t>(x - 1) * inst_->size() + (y - 1)];
    case MetricInstance::Kind::euclidean:
      return x == y ? 0.0 : point_distance(inst_->euclidean_data(), x, y);
    case MetricInstance::Kind::discrete:
      return x == y ? 0.0 : 1.0;
    case MetricInstance::Kind::graph: {
      const auto& g = inst_->graph_data();
      if (g.all_pairs)
        return static_cast<double>(
            (*g.all_pairs)[static_cast<size_t>(x - 1) * g.n + (y - 1)]);
      if (!bfs_cache_[y - 1].empty() && bfs_cache_[x - 1].empty())
        return static_cast<double>(graph_row(y)[x]);
      return static_cast<double>(graph_row(x)[y]);
    }
  }
  return 0;
}

double DistanceOracle::dist(PointId x, PointId y) {
  if (x < 1 || x > size() || y < 1 || y > size())
    throw std::out_of_range("oracle query out of range");
  ++ledger_.count;
  if (ledger_.tracing) ledger_.trace.emplace_back(x, y);
  return raw_distance(x, y);
}

double exact_sum_cost(DistanceOracle& o, PointId p) {
  if (p < 1 || p > o.size()) throw std::out_of_range("point out of range");
  double s = 0;
  for (PointId y = 1; y <= o.size(); ++y)
    if (y != p) s += o.dist(p, y);
  return s;
}

double exact_average_distance(DistanceOracle& o) {
  const int n = o.size();
  double s = 0;
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = x + 1; y <= n; ++y) s += o.dist(x, y);
  // Ordered-pair average over all n^2 pairs; diagonal terms are zero.
  return 2.0 * s / (static_cast<double>(n) * n);
}

MedianResultExact brute_force_median(DistanceOracle& o) {
  const int n = o.size();
  std::vector<double> cost(n + 1, 0.0);
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = x + 1; y <= n; ++y) {
      const double d = o.dist(x, y);
      cost[x] += d;
      cost[y] += d;
    }
  MedianResultExact best{1, cost[1]};
  for (PointId p = 2; p <= n; ++p)
    if (cost[p] < best.cost) best = {p, cost[p]};
  return best;
}

DiameterResult diameter(DistanceOracle& o) {
  const int n = o.size();
  DiameterResult r;
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = x + 1; y <= n; ++y) {
      const double d = o.dist(x, y);
      if (d > r.value) r = {d, x, y};
    }
  return r;
}

std::string MetricViolation::describe() const {
  char buf[128];
  switch (kind) {
    case ViolationKind::identity:
      std::snprintf(buf, sizeof buf, "identity violated at (%d,%d)", x, y);
      break;
    case ViolationKind::symmetry:
      std::snprintf(buf, sizeof buf, "symmetry violated at (%d,%d)", x, y);
      break;
    case ViolationKind::triangle:
      std::snprintf(buf, sizeof buf, "triangle violated at (%d,%d,%d)", x, y, z);
      break;
  }
  return buf;
}

std::optional<MetricViolation> validate_metric(std::span<const double> matrix, int n,
                                               double rel_tol) {
  if (n < 1 || matrix.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("matrix size must be n*n");
  auto at = [&](PointId x, PointId y) {
    return matrix[static_cast<size_t>(x - 1) * n + (y - 1)];
  };
  // Identity pass also owns non-negativity and finiteness: a NaN, negative,
  // or zero off-diagonal entry means d does not separate points properly.
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = 1; y <= n; ++y) {
      const double v = at(x, y);
      if (x == y) {
        if (v != 0.0) return MetricViolation{ViolationKind::identity, x, y, 0};
      } else if (!(std::isfinite(v) && v > 0.0)) {
        return MetricViolation{ViolationKind::identity, x, y, 0};
      }
    }
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = 1; y <= n; ++y)
      if (at(x, y) != at(y, x)) return MetricViolation{ViolationKind::symmetry, x, y, 0};
  for (PointId x = 1; x <= n; ++x)
    for (PointId y = 1; y <= n; ++y)
      for (PointId z = 1; z <= n; ++z)
        if (at(x, y) + at(y, z) < at(x, z) * (1.0 - rel_tol))
          return MetricViolation{ViolationKind::triangle, x, y, z};
  return std::nullopt;
}

std::optional<MetricViolation> validate_instance(const MetricInstance& inst) {
  const bool floating = inst.kind() == MetricInstance::Kind::explicit_matrix ||
                        inst.kind() == MetricInstance::Kind::euclidean;
  return validate_metric(materialize_matrix(inst), inst.size(), floating ? 1e-9 : 0.0);
}

}  // namespace randmatch

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace randmatch {

// Points of an n-point space are the integers 1..n.
using PointId = int;

enum class Norm { l1, l2, linf };

// A finite metric space in one of four concrete representations. Instances
// are immutable after construction; construction checks the cheap axioms
// (size, symmetry, zero diagonal, positive off-diagonal, finiteness) and
// throws std::invalid_argument on violation. The O(n^3) triangle check is
// a separate pass, see validate_metric below.
class MetricInstance {
 public:
  enum class Kind { explicit_matrix, euclidean, discrete, graph };

  struct MatrixData {
    int n = 0;
    std::vector<double> d;  // row-major n*n
  };
  struct EuclideanData {
    int n = 0;
    int dim = 0;
    std::vector<double> coords;  // row-major n*dim
    Norm norm = Norm::l2;
  };
  struct GraphData {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // u < v, no duplicates
    std::vector<int> adj_offsets;            // CSR, size n+1
    std::vector<int> adj;
    // Optional n*n table of hop distances; built on request for instances
    // that will be queried densely. shared_ptr so instances stay cheap to copy.
    std::shared_ptr<const std::vector<std::uint16_t>> all_pairs;
  };

  static MetricInstance explicit_matrix(int n, std::vector<double> d);
  static MetricInstance euclidean(int n, int dim, std::vector<double> coords,
                                  Norm norm = Norm::l2);
  static MetricInstance discrete(int n);
  // Graph must be connected (checked). precompute_all_pairs trades n^2 memory
  // for O(1) distance lookups; without it callers BFS per source on demand.
  static MetricInstance graph(int n, std::vector<std::pair<int, int>> edges,
                              bool precompute_all_pairs = false);

  // Empty placeholder (size 0) so result structs can hold an instance by
  // value; every factory-made instance has n >= 1.
  MetricInstance() = default;

  int size() const { return n_; }
  Kind kind() const { return kind_; }

  const MatrixData& matrix_data() const;
  const EuclideanData& euclidean_data() const;
  const GraphData& graph_data() const;

 private:
  int n_ = 0;
  Kind kind_ = Kind::discrete;
  std::shared_ptr<const MatrixData> matrix_;
  std::shared_ptr<const EuclideanData> euclidean_;
  std::shared_ptr<const GraphData> graph_;
};

const char* kind_name(MetricInstance::Kind k);

// Hop distances from s by breadth-first search. Internal building block,
// exposed for tests; throws if some vertex is unreachable.
std::vector<int> bfs_hop_distances(const MetricInstance::GraphData& g, PointId s);

// Flatten any instance to a full row-major n*n matrix. For graphs this runs
// n BFS passes unless the instance carries a precomputed table.
std::vector<double> materialize_matrix(const MetricInstance& inst);

// Every distance evaluation an algorithm makes goes through an oracle, which
// counts it. The count is the cost measure for everything in this library;
// algorithm code never reads distances behind the ledger's back.
struct QueryLedger {
  std::uint64_t count = 0;
  bool tracing = false;
  std::vector<std::pair<PointId, PointId>> trace;  // stored as (x, y) as asked
};

class DistanceOracle {
 public:
  // The instance must outlive the oracle.
  explicit DistanceOracle(const MetricInstance& inst, bool trace = false);
  DistanceOracle(const DistanceOracle&) = delete;
  DistanceOracle& operator=(const DistanceOracle&) = delete;

  // Counts one query, including repeats and x == y.
  double dist(PointId x, PointId y);

  int size() const { return inst_->size(); }
  std::uint64_t queries() const { return ledger_.count; }
  const QueryLedger& ledger() const { return ledger_; }
  const MetricInstance& instance() const { return *inst_; }

 private:
  double raw_distance(PointId x, PointId y);
  const std::vector<int>& graph_row(PointId s);

  const MetricInstance* inst_;
  QueryLedger ledger_;
  std::vector<std::vector<int>> bfs_cache_;  // per-source rows, lazily filled
};

// Sum of d(p, y) over all y != p. Exactly n - 1 queries.
double exact_sum_cost(DistanceOracle& o, PointId p);

// Average over all n^2 ordered pairs, diagonal included (each d(x,x) = 0
// contributes a zero term). Asks each unordered pair once: n(n-1)/2 queries.
double exact_average_distance(DistanceOracle& o);

// Scans all unordered pairs, crediting each distance to both endpoints'
// cost totals: n(n-1)/2 queries. Ties break to the smallest point id.
struct MedianResultExact {
  PointId point = 1;
  double cost = 0.0;
};
MedianResultExact brute_force_median(DistanceOracle& o);

struct DiameterResult {
  double value = 0.0;
  PointId x = 1, y = 1;
};
// Largest pairwise distance; n(n-1)/2 queries. n = 1 gives value 0, pair (1,1).
DiameterResult diameter(DistanceOracle& o);

// Full axiom check over an explicit matrix, O(n^3). Scans identity, then
// symmetry, then triangle, each in ascending (x, y, z) order, and reports
// the first offending triple. rel_tol loosens only the triangle test:
// d(x,y) + d(y,z) >= d(x,z) * (1 - rel_tol). Identity and symmetry are exact.
enum class ViolationKind { identity, symmetry, triangle };
struct MetricViolation {
  ViolationKind kind;
  PointId x = 0, y = 0, z = 0;
  std::string describe() const;
};
std::optional<MetricViolation> validate_metric(std::span<const double> matrix,
                                               int n, double rel_tol = 0.0);

// Materializes and validates with a tolerance fitting the representation:
// 1e-9 for floating-point distances (matrix, euclidean), exact for integral
// ones (discrete, graph).
std::optional<MetricViolation> validate_instance(const MetricInstance& inst);

}  // namespace randmatch

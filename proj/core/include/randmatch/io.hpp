#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "randmatch/metric.hpp"

namespace randmatch {

// Three text formats, one instance kind each:
//   .matrix  line 1: n            then n lines of n distances
//   .points  line 1: n D          then n lines of D coordinates
//   .graph   line 1: n m          then m lines "u v", 1-based, undirected
// Whitespace-separated, '#' starts a comment line. Parse errors throw
// std::runtime_error naming the offending line.

enum class InstanceFormat { matrix, points, graph };

std::optional<InstanceFormat> format_from_extension(const std::string& path);

struct RawMatrix {
  int n = 0;
  std::vector<double> values;
};
// Loads the numbers and checks each entry is finite and non-negative; the
// metric axioms are the constructor's and validate_metric's job.
RawMatrix load_raw_matrix(const std::string& path);

MetricInstance load_matrix_instance(const std::string& path);
MetricInstance load_points_instance(const std::string& path, Norm norm = Norm::l2);
MetricInstance load_graph_instance(const std::string& path,
                                   bool precompute_all_pairs = false);
MetricInstance load_instance(const std::string& path,
                             std::optional<InstanceFormat> format = std::nullopt,
                             Norm norm = Norm::l2,
                             bool precompute_all_pairs = false);

void save_matrix_file(const std::string& path, int n, std::span<const double> values);
void save_points_file(const std::string& path, int n, int dim,
                      std::span<const double> coords);
void save_graph_file(const std::string& path, int n,
                     std::span<const std::pair<int, int>> edges);

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

}  // namespace randmatch

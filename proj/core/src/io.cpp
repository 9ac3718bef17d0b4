#include "randmatch/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace randmatch {

namespace {

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

// Token stream over the file, skipping blank and '#' comment lines and
// remembering the current line for error messages.
class TokenReader {
 public:
  TokenReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("cannot open " + path);
  }

  std::string next(const char* what) {
    std::string tok;
    while (!(line_stream_ >> tok)) {
      if (!std::getline(in_, line_)) fail(path_, line_no_, std::string("expected ") + what);
      ++line_no_;
      if (line_.find('#') != std::string::npos) line_.erase(line_.find('#'));
      line_stream_ = std::istringstream(line_);
    }
    return tok;
  }

  long long next_int(const char* what) {
    const std::string tok = next(what);
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      fail(path_, line_no_, "bad integer '" + tok + "' for " + what);
    return v;
  }

  double next_double(const char* what) {
    const std::string tok = next(what);
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      fail(path_, line_no_, "bad number '" + tok + "' for " + what);
    return v;
  }

  void expect_end() {
    std::string tok;
    if (line_stream_ >> tok) fail(path_, line_no_, "trailing token '" + tok + "'");
    while (std::getline(in_, line_)) {
      ++line_no_;
      if (line_.find('#') != std::string::npos) line_.erase(line_.find('#'));
      std::istringstream s(line_);
      if (s >> tok) fail(path_, line_no_, "trailing token '" + tok + "'");
    }
  }

  const std::string& path() const { return path_; }
  int line() const { return line_no_; }

 private:
  std::string path_;
  std::ifstream in_;
  std::string line_;
  std::istringstream line_stream_;
  int line_no_ = 0;
};

}  // namespace

std::optional<InstanceFormat> format_from_extension(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string ext = path.substr(dot + 1);
  if (ext == "matrix") return InstanceFormat::matrix;
  if (ext == "points") return InstanceFormat::points;
  if (ext == "graph") return InstanceFormat::graph;
  return std::nullopt;
}

RawMatrix load_raw_matrix(const std::string& path) {
  TokenReader r(path);
  const long long n = r.next_int("n");
  if (n < 1 || n > 100000) fail(path, r.line(), "n out of range");
  RawMatrix m;
  m.n = static_cast<int>(n);
  m.values.reserve(static_cast<size_t>(n) * n);
  for (long long i = 0; i < n * n; ++i) {
    const double v = r.next_double("distance");
    if (!std::isfinite(v) || v < 0.0) fail(path, r.line(), "distances must be finite and >= 0");
    m.values.push_back(v);
  }
  r.expect_end();
  return m;
}

MetricInstance load_matrix_instance(const std::string& path) {
  RawMatrix m = load_raw_matrix(path);
  return MetricInstance::explicit_matrix(m.n, std::move(m.values));
}

MetricInstance load_points_instance(const std::string& path, Norm norm) {
  TokenReader r(path);
  const long long n = r.next_int("n");
  const long long dim = r.next_int("D");
  if (n < 1 || n > 100000) fail(path, r.line(), "n out of range");
  if (dim < 1 || dim > 4096) fail(path, r.line(), "D out of range");
  std::vector<double> coords;
  coords.reserve(static_cast<size_t>(n) * dim);
  for (long long i = 0; i < n * dim; ++i) {
    const double v = r.next_double("coordinate");
    if (!std::isfinite(v)) fail(path, r.line(), "coordinates must be finite");
    coords.push_back(v);
  }
  r.expect_end();
  return MetricInstance::euclidean(static_cast<int>(n), static_cast<int>(dim),
                                   std::move(coords), norm);
}

MetricInstance load_graph_instance(const std::string& path, bool precompute_all_pairs) {
  TokenReader r(path);
  const long long n = r.next_int("n");
  const long long m = r.next_int("m");
  if (n < 1 || n > 1000000) fail(path, r.line(), "n out of range");
  if (m < 0) fail(path, r.line(), "m out of range");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(m));
  for (long long i = 0; i < m; ++i) {
    const long long u = r.next_int("u");
    const long long v = r.next_int("v");
    if (u < 1 || u > n || v < 1 || v > n) fail(path, r.line(), "edge endpoint out of range");
    if (u == v) fail(path, r.line(), "self-loop");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  r.expect_end();
  return MetricInstance::graph(static_cast<int>(n), std::move(edges),
                               precompute_all_pairs);
}

MetricInstance load_instance(const std::string& path,
                             std::optional<InstanceFormat> format, Norm norm,
                             bool precompute_all_pairs) {
  if (!format) format = format_from_extension(path);
  if (!format)
    throw std::runtime_error(path + ": unknown format, expected .matrix/.points/.graph");
  switch (*format) {
    case InstanceFormat::matrix: return load_matrix_instance(path);
    case InstanceFormat::points: return load_points_instance(path, norm);
    case InstanceFormat::graph: return load_graph_instance(path, precompute_all_pairs);
  }
  throw std::runtime_error("unreachable");
}

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void save_matrix_file(const std::string& path, int n, std::span<const double> values) {
  if (values.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("matrix size must be n*n");
  auto out = open_out(path);
  out << n << "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << format_double(values[static_cast<size_t>(i) * n + j]);
    }
    out << "\n";
  }
}

void save_points_file(const std::string& path, int n, int dim,
                      std::span<const double> coords) {
  if (coords.size() != static_cast<size_t>(n) * dim)
    throw std::invalid_argument("coords size must be n*dim");
  auto out = open_out(path);
  out << n << ' ' << dim << "\n";
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < dim; ++k) {
      if (k) out << ' ';
      out << format_double(coords[static_cast<size_t>(i) * dim + k]);
    }
    out << "\n";
  }
}

void save_graph_file(const std::string& path, int n,
                     std::span<const std::pair<int, int>> edges) {
  auto out = open_out(path);
  out << n << ' ' << edges.size() << "\n";
  for (const auto& [u, v] : edges) out << u << ' ' << v << "\n";
}

}  // namespace randmatch

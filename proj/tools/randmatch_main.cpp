// Command-line driver: instance generation, seeded experiments over the
// library's algorithms, CSV reports. Every row is independently reproducible
// from (config, base_seed + trial index).

#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "randmatch/adversary.hpp"
#include "randmatch/avgdist.hpp"
#include "randmatch/csv.hpp"
#include "randmatch/generators.hpp"
#include "randmatch/io.hpp"
#include "randmatch/matching.hpp"
#include "randmatch/maxsqsum.hpp"
#include "randmatch/median.hpp"
#include "randmatch/metric.hpp"
#include "randmatch/rng.hpp"

namespace rm = randmatch;

namespace {

constexpr int kExitRuntimeError = 2;
constexpr int kExitInvariantViolation = 3;

// Exact reference columns (opt, r_bar) make rows self-checking but cost
// n(n-1)/2 side queries, so experiment subcommands are capped at desk scale.
constexpr int kMaxExactN = 8192;

struct InstanceOptions {
  std::string input;
  std::string format;  // "", "matrix", "points", "graph"
  std::string norm = "2";
};

void add_instance_options(CLI::App* cmd, InstanceOptions& io) {
  cmd->add_option("--input", io.input, "instance file (.matrix/.points/.graph)")
      ->required();
  cmd->add_option("--input-format", io.format, "override format inference")
      ->check(CLI::IsMember({"matrix", "points", "graph"}));
  cmd->add_option("--norm", io.norm, "norm for points instances")
      ->check(CLI::IsMember({"1", "2", "inf"}));
}

rm::MetricInstance load_from_options(const InstanceOptions& io) {
  std::optional<rm::InstanceFormat> fmt;
  if (io.format == "matrix") fmt = rm::InstanceFormat::matrix;
  if (io.format == "points") fmt = rm::InstanceFormat::points;
  if (io.format == "graph") fmt = rm::InstanceFormat::graph;
  rm::Norm norm = rm::Norm::l2;
  if (io.norm == "1") norm = rm::Norm::l1;
  if (io.norm == "inf") norm = rm::Norm::linf;
  // Dense trial batches hit graph distances hard; a one-time all-pairs table
  // is cheap at desk scale (n^2 uint16).
  rm::MetricInstance inst = rm::load_instance(io.input, fmt, norm, false);
  if (inst.kind() == rm::MetricInstance::Kind::graph && inst.size() <= 4096) {
    return rm::MetricInstance::graph(inst.size(), inst.graph_data().edges, true);
  }
  return inst;
}

// Output sink: path or "-" for stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") {
      out_ = &std::cout;
      return;
    }
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot write " + path);
    out_ = &file_;
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = nullptr;
};

// Runs fn(trial) for trial in [0, trials), at most `parallel` at a time, and
// returns the collected row strings in trial order no matter who finished
// first.
std::vector<std::string> run_trials(std::uint64_t trials, unsigned parallel,
                                    const std::function<std::string(std::uint64_t)>& fn) {
  std::vector<std::string> rows(trials);
  if (parallel <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) rows[t] = fn(t);
    return rows;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(parallel);
  for (unsigned w = 0; w < parallel; ++w)
    workers.emplace_back([&, w] {
      try {
        for (;;) {
          const std::uint64_t t = next.fetch_add(1);
          if (t >= trials) return;
          rows[t] = fn(t);
        }
      } catch (...) {
        errors[w] = std::current_exception();
        next.store(trials);  // stop the other workers soon
      }
    });
  for (auto& th : workers) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

[[noreturn]] void invariant_violation(const std::string& name) {
  std::cerr << "invariant violation: " << name << "\n";
  std::exit(kExitInvariantViolation);
}

std::string csv_row(const std::function<void(rm::CsvWriter&)>& build) {
  std::ostringstream os;
  rm::CsvWriter w(os);
  build(w);
  w.end_row();
  return os.str();
}

// ---- gen ----

struct GenConfig {
  std::string family;
  int n = 0;
  int dim = 3;
  double edge_prob = 0.05;
  std::uint64_t seed = 1;
  std::string output;
};

int cmd_gen(const GenConfig& cfg) {
  rm::Rng rng = rm::make_rng(cfg.seed);
  if (cfg.family == "discrete") {
    // The discrete metric is fully determined by n; emit it as a matrix so
    // the file stands alone.
    const rm::MetricInstance inst = rm::gen_discrete(cfg.n);
    rm::save_matrix_file(cfg.output, cfg.n, rm::materialize_matrix(inst));
  } else if (cfg.family == "euclidean") {
    const rm::MetricInstance inst = rm::gen_euclidean(cfg.n, cfg.dim, rng);
    rm::save_points_file(cfg.output, cfg.n, cfg.dim, inst.euclidean_data().coords);
  } else if (cfg.family == "graph-gnp") {
    const rm::MetricInstance inst = rm::gen_gnp_connected(cfg.n, cfg.edge_prob, rng);
    rm::save_graph_file(cfg.output, cfg.n, inst.graph_data().edges);
  } else if (cfg.family == "graph-tree") {
    const rm::MetricInstance inst = rm::gen_random_tree(cfg.n, rng);
    rm::save_graph_file(cfg.output, cfg.n, inst.graph_data().edges);
  } else if (cfg.family == "matrix") {
    const rm::MetricInstance inst = rm::gen_metric_matrix(cfg.n, rng);
    rm::save_matrix_file(cfg.output, cfg.n, inst.matrix_data().d);
  } else {
    throw std::runtime_error("unknown family " + cfg.family);
  }
  return 0;
}

// ---- median ----

struct MedianConfig {
  InstanceOptions inst;
  double epsilon = 0.5;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  unsigned parallel = 1;
  std::string output = "-";
};

int cmd_median(const MedianConfig& cfg) {
  const rm::MetricInstance inst = load_from_options(cfg.inst);
  const int n = inst.size();
  if (n < 2) throw std::runtime_error("median needs n >= 2");
  if (n > kMaxExactN)
    throw std::runtime_error("instance too large for the exact opt column");

  rm::DistanceOracle side(inst);
  const auto exact = rm::brute_force_median(side);

  auto rows = run_trials(cfg.trials, cfg.parallel, [&](std::uint64_t t) {
    const std::uint64_t seed = rm::derive_seed(cfg.seed, t);
    rm::Rng rng = rm::make_rng(seed);
    rm::DistanceOracle o(inst);
    const rm::MedianResult r = rm::las_vegas_median(o, cfg.epsilon, rng);
    const double ratio = r.cost / exact.cost;
    if (!(ratio <= (2.0 + cfg.epsilon) * (1.0 + 1e-12)))
      throw std::runtime_error("invariant:approximation ratio above the certified bound");
    if (!r.fell_back &&
        !(r.cost <= (2.0 + cfg.epsilon) * r.certificate_matching_sum))
      throw std::runtime_error("invariant:certificate does not cover the returned cost");
    return csv_row([&](rm::CsvWriter& w) {
      w.field(seed).field(n).field(cfg.epsilon).field(r.point).field(r.cost);
      w.field(exact.cost).field(ratio).field(r.iterations).field(r.queries);
      w.field(r.fell_back);
    });
  });

  Output out(cfg.output);
  out.stream() << "seed,n,epsilon,point,cost,opt,ratio,iterations,queries,fallback\n";
  for (const auto& r : rows) out.stream() << r;
  return 0;
}

// ---- avgdist ----

struct AvgConfig {
  InstanceOptions inst;
  std::string method = "matching_max";
  double epsilon = 0.25;
  std::uint64_t samples = 1000;
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  unsigned parallel = 1;
  std::string output = "-";
};

int cmd_avgdist(const AvgConfig& cfg) {
  const rm::MetricInstance inst = load_from_options(cfg.inst);
  const int n = inst.size();
  if (n < 2) throw std::runtime_error("avgdist needs n >= 2");
  if (n > kMaxExactN)
    throw std::runtime_error("instance too large for the exact r_bar column");

  rm::DistanceOracle side(inst);
  const double r_bar = rm::exact_average_distance(side);

  auto rows = run_trials(cfg.trials, cfg.parallel, [&](std::uint64_t t) {
    const std::uint64_t seed = rm::derive_seed(cfg.seed, t);
    rm::Rng rng = rm::make_rng(seed);
    rm::DistanceOracle o(inst);
    rm::AvgEstimate e;
    double eps_or_t = 0;
    if (cfg.method == "matching_max") {
      e = rm::estimate_avg_general(o, cfg.epsilon, rng);
      eps_or_t = cfg.epsilon;
      if (e.value > r_bar * (1.0 + 1e-9))
        throw std::runtime_error("invariant:one-sided estimate exceeded r_bar");
    } else if (cfg.method == "graph_single_matching") {
      e = rm::estimate_avg_graph(o, rng);
      eps_or_t = cfg.epsilon;
    } else {
      e = rm::pair_sampling_baseline(o, cfg.samples, rng);
      eps_or_t = static_cast<double>(cfg.samples);
    }
    return csv_row([&](rm::CsvWriter& w) {
      w.field(seed).field(rm::avg_method_name(e.method)).field(n).field(eps_or_t);
      w.field(e.value).field(r_bar).field(e.value / r_bar).field(e.queries);
    });
  });

  Output out(cfg.output);
  out.stream() << "seed,method,n,epsilon_or_t,value,r_bar,ratio,queries\n";
  for (const auto& r : rows) out.stream() << r;
  return 0;
}

// ---- stats ----

struct StatsConfig {
  InstanceOptions inst;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  double delta = 0.0;  // > 0: also report the closed-form variance bound
  unsigned parallel = 1;
  std::string output = "-";
};

int cmd_stats(const StatsConfig& cfg) {
  const rm::MetricInstance inst = load_from_options(cfg.inst);
  const int n = inst.size();
  if (n > kMaxExactN)
    throw std::runtime_error("instance too large for the exact cap check");

  rm::DistanceOracle side(inst);
  const double r_bar = rm::exact_average_distance(side);
  const double cap = n * r_bar * (1.0 + 1e-9);

  std::vector<double> values(cfg.trials);
  auto rows = run_trials(cfg.trials, cfg.parallel, [&](std::uint64_t t) {
    const rm::MatchingTrial trial = rm::run_matching_trial(inst, t, cfg.seed);
    if (trial.value > cap)
      throw std::runtime_error("invariant:matching sum above the n*r_bar cap");
    values[t] = trial.value;
    return csv_row([&](rm::CsvWriter& w) {
      w.field(trial.trial).field(trial.seed).field(trial.value).field(trial.queries);
    });
  });

  Output out(cfg.output);
  out.stream() << "trial,seed,matching_sum,queries\n";
  for (const auto& r : rows) out.stream() << r;

  if (cfg.trials >= 2) {
    const rm::MatchingStats st = rm::stats_from_values(values);
    std::cerr << "trials=" << st.trials << " mean=" << rm::format_double(st.mean)
              << " expected=" << rm::format_double(rm::expected_matching_sum(n, r_bar))
              << " variance=" << rm::format_double(st.variance) << "\n";
    if (cfg.delta > 0.0) {
      const auto opt = rm::brute_force_median(side);
      const double diam = rm::diameter(side).value;
      rm::VarianceBoundInputs in{n, r_bar, opt.cost / n, cfg.delta, diam};
      if (const auto bound = rm::variance_bound_exact(in))
        std::cerr << "variance_bound=" << rm::format_double(*bound) << "\n";
      else
        std::cerr << "variance_bound=not_certified (delta*n*r < Delta)\n";
    }
  }
  return 0;
}

// ---- maxsq ----

struct MaxsqConfig {
  int n = 0;
  double r_bar = 0.0;
  double cap = 0.0;
  std::uint64_t instances = 0;
  int max_n = 64;
  std::uint64_t random_solutions = 0;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int cmd_maxsq(const MaxsqConfig& cfg) {
  std::vector<rm::msq::Instance> insts;
  rm::Rng rng = rm::make_rng(cfg.seed);
  if (cfg.instances > 0) {
    for (std::uint64_t i = 0; i < cfg.instances; ++i) {
      const int n = 2 + static_cast<int>(rm::uniform_below(
                            rng, static_cast<std::uint64_t>(cfg.max_n - 1)));
      const double r_bar = 0.1 + 9.9 * rm::uniform_unit(rng);
      const double cap = r_bar * (1.0 + 9.0 * rm::uniform_unit(rng));
      insts.push_back({n, r_bar, cap});
    }
  } else {
    if (cfg.n < 2) throw std::runtime_error("need --n >= 2 or --instances");
    insts.push_back({cfg.n, cfg.r_bar, cfg.cap});
  }

  Output out(cfg.output);
  out.stream() << "n,r_bar,cap,greedy_objective,analytic_bound,gap\n";
  for (const auto& in : insts) {
    const rm::msq::Solution greedy = rm::msq::greedy_optimum(in);
    const double bound = rm::msq::analytic_bound(in);
    if (greedy.objective > bound * (1.0 + 1e-12))
      invariant_violation("greedy objective above the analytic bound");
    for (std::uint64_t s = 0; s < cfg.random_solutions; ++s) {
      const rm::msq::Solution sol = rm::msq::random_feasible(in, rng);
      if (sol.objective > greedy.objective * (1.0 + 1e-9))
        invariant_violation("random feasible solution above the greedy optimum");
    }
    rm::CsvWriter w(out.stream());
    w.field(in.n).field(in.r_bar).field(in.cap).field(greedy.objective);
    w.field(bound).field(bound - greedy.objective);
    w.end_row();
  }
  return 0;
}

// ---- adversary ----

struct AdvConfig {
  std::string algorithm = "query-nothing";
  int n = 100;
  double epsilon = 0.5;
  std::uint64_t k = 100;        // random-k
  std::uint64_t query_cap = 0;  // truncated-lv; 0 = auto (under threshold)
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int cmd_adversary(const AdvConfig& cfg) {
  rm::MedianAlgorithm algo;
  if (cfg.algorithm == "query-nothing") {
    algo = rm::stub_query_nothing();
  } else if (cfg.algorithm == "random-k") {
    algo = rm::stub_random_queries(cfg.k);
  } else if (cfg.algorithm == "truncated-lv") {
    std::uint64_t cap = cfg.query_cap;
    if (cap == 0) {
      const double th = rm::query_threshold(cfg.n, cfg.epsilon);
      const double pad = cfg.n;  // dummy padding can add up to n-1 pairs
      cap = th > pad ? static_cast<std::uint64_t>(th - pad) : 0;
    }
    algo = rm::stub_truncated_las_vegas(cfg.epsilon, cap);
  } else if (cfg.algorithm == "brute-force") {
    algo = rm::stub_brute_force();
  } else {
    throw std::runtime_error("unknown algorithm " + cfg.algorithm);
  }

  Output out(cfg.output);
  out.stream()
      << "algorithm,seed,n,epsilon,queries,threshold,refused,p,p_hat,cost_p,cost_p_hat,ratio\n";
  const double threshold = rm::query_threshold(cfg.n, cfg.epsilon);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t seed = rm::derive_seed(cfg.seed, t);
    rm::Rng rng = rm::make_rng(seed);
    const rm::QueryTranscript tr = rm::record_run(algo, cfg.n, rng);
    const auto result = rm::construct_fooling_metric(tr, cfg.epsilon);

    rm::CsvWriter w(out.stream());
    w.field(cfg.algorithm).field(seed).field(cfg.n).field(cfg.epsilon);
    w.field(static_cast<std::uint64_t>(tr.pairs.size())).field(threshold);
    if (const auto* fr = std::get_if<rm::FoolingResult>(&result)) {
      const rm::VerificationReport rep = rm::verify_fooling(*fr, tr, cfg.epsilon);
      if (!rep.all_passed) {
        for (const auto& c : rep.checks)
          if (!c.passed) invariant_violation("fooling check failed: " + c.name);
      }
      w.field(false).field(tr.output_p).field(fr->p_hat).field(fr->cost_p);
      w.field(fr->cost_p_hat).field(fr->achieved_ratio);
    } else {
      w.field(true).field(tr.output_p).field(0).field(0.0).field(0.0).field(0.0);
    }
    w.end_row();
  }
  return 0;
}

// ---- validate ----

int cmd_validate(const InstanceOptions& io) {
  const rm::MetricInstance inst = load_from_options(io);
  if (const auto v = rm::validate_instance(inst)) {
    std::cout << v->describe() << "\n";
    return 1;
  }
  std::cout << "Ok: " << rm::kind_name(inst.kind()) << " n=" << inst.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-matching experiments over finite metric spaces"};
  app.require_subcommand(1);

  GenConfig gen;
  auto* cgen = app.add_subcommand("gen", "generate an instance file");
  cgen->add_option("--family", gen.family, "instance family")
      ->required()
      ->check(CLI::IsMember({"euclidean", "graph-gnp", "graph-tree", "discrete", "matrix"}));
  cgen->add_option("--n", gen.n, "point count")->required()->check(CLI::PositiveNumber);
  cgen->add_option("--dim", gen.dim, "dimension (euclidean)")->check(CLI::PositiveNumber);
  cgen->add_option("--edge-prob", gen.edge_prob, "edge probability (graph-gnp)");
  cgen->add_option("--seed", gen.seed, "generator seed");
  cgen->add_option("--output", gen.output, "output file")->required();

  MedianConfig med;
  auto* cmed = app.add_subcommand("median", "Las Vegas 1-median selection");
  add_instance_options(cmed, med.inst);
  cmed->add_option("--epsilon", med.epsilon, "approximation slack, (0,1]")->required();
  cmed->add_option("--trials", med.trials, "independent runs")->check(CLI::PositiveNumber);
  cmed->add_option("--seed", med.seed, "base seed");
  cmed->add_option("--parallel", med.parallel, "worker threads")->check(CLI::PositiveNumber);
  cmed->add_option("--output", med.output, "CSV path or -");

  AvgConfig avg;
  auto* cavg = app.add_subcommand("avgdist", "average-distance estimation");
  add_instance_options(cavg, avg.inst);
  cavg->add_option("--method", avg.method, "estimator")
      ->check(CLI::IsMember({"matching_max", "graph_single_matching", "pair_sampling"}));
  cavg->add_option("--epsilon", avg.epsilon, "slack for matching_max");
  cavg->add_option("--samples", avg.samples, "pair_sampling sample count")
      ->check(CLI::PositiveNumber);
  cavg->add_option("--trials", avg.trials, "independent runs")->check(CLI::PositiveNumber);
  cavg->add_option("--seed", avg.seed, "base seed");
  cavg->add_option("--parallel", avg.parallel, "worker threads")->check(CLI::PositiveNumber);
  cavg->add_option("--output", avg.output, "CSV path or -");

  StatsConfig sts;
  auto* csts = app.add_subcommand("stats", "matching-sum trial dump");
  add_instance_options(csts, sts.inst);
  csts->add_option("--trials", sts.trials, "trial count")->check(CLI::PositiveNumber);
  csts->add_option("--seed", sts.seed, "base seed");
  csts->add_option("--delta", sts.delta, "also print the variance bound for this delta");
  csts->add_option("--parallel", sts.parallel, "worker threads")->check(CLI::PositiveNumber);
  csts->add_option("--output", sts.output, "CSV path or -");

  MaxsqConfig msq;
  auto* cmsq = app.add_subcommand("maxsq", "square-sum bound experiments");
  cmsq->add_option("--n", msq.n, "explicit instance: n");
  cmsq->add_option("--r-bar", msq.r_bar, "explicit instance: average distance");
  cmsq->add_option("--cap", msq.cap, "explicit instance: per-variable cap");
  cmsq->add_option("--instances", msq.instances, "sweep: random instance count");
  cmsq->add_option("--max-n", msq.max_n, "sweep: maximum n")->check(CLI::PositiveNumber);
  cmsq->add_option("--random-solutions", msq.random_solutions,
                   "dominance draws per instance");
  cmsq->add_option("--seed", msq.seed, "sweep seed");
  cmsq->add_option("--output", msq.output, "CSV path or -");

  AdvConfig adv;
  auto* cadv = app.add_subcommand("adversary", "query lower-bound harness");
  cadv->add_option("--algorithm", adv.algorithm, "stub under test")
      ->check(CLI::IsMember({"query-nothing", "random-k", "truncated-lv", "brute-force"}));
  cadv->add_option("--n", adv.n, "point count")->check(CLI::PositiveNumber);
  cadv->add_option("--epsilon", adv.epsilon, "lower-bound epsilon, (0,1)");
  cadv->add_option("--k", adv.k, "random-k: query count");
  cadv->add_option("--query-cap", adv.query_cap, "truncated-lv: query cap (0 = auto)");
  cadv->add_option("--trials", adv.trials, "episodes")->check(CLI::PositiveNumber);
  cadv->add_option("--seed", adv.seed, "base seed");
  cadv->add_option("--output", adv.output, "CSV path or -");

  InstanceOptions val;
  auto* cval = app.add_subcommand("validate", "check the metric axioms of a file");
  add_instance_options(cval, val);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cgen->parsed()) return cmd_gen(gen);
    if (cmed->parsed()) return cmd_median(med);
    if (cavg->parsed()) return cmd_avgdist(avg);
    if (csts->parsed()) return cmd_stats(sts);
    if (cmsq->parsed()) return cmd_maxsq(msq);
    if (cadv->parsed()) return cmd_adversary(adv);
    if (cval->parsed()) return cmd_validate(val);
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.rfind("invariant:", 0) == 0) {
      std::cerr << "invariant violation: " << what.substr(10) << "\n";
      return kExitInvariantViolation;
    }
    std::cerr << "error: " << what << "\n";
    return kExitRuntimeError;
  }
  return 0;
}

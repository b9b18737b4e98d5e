#include "piecenet/metrics.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace piecenet {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::vector<double> region_means(const std::vector<int>& regions,
                                 const std::vector<double>& values, int num_regions) {
  std::vector<double> sum(static_cast<size_t>(num_regions), 0.0);
  std::vector<int> count(static_cast<size_t>(num_regions), 0);
  for (size_t i = 0; i < regions.size(); ++i) {
    sum[static_cast<size_t>(regions[i])] += values[i];
    ++count[static_cast<size_t>(regions[i])];
  }
  for (int l = 0; l < num_regions; ++l) {
    if (count[static_cast<size_t>(l)] == 0)
      throw DegenerateLabelsError("region " + std::to_string(l) +
                                  " received no training points for label averaging");
    sum[static_cast<size_t>(l)] /= count[static_cast<size_t>(l)];
  }
  return sum;
}

}  // namespace

void validate_spec(const ExperimentSpec& spec, const ProblemDefinition& problem) {
  const int regions = problem.map.num_regions();
  if (spec.neurons < 1) throw ConfigError("neurons must be >= 1");
  if (spec.trials < 1) throw ConfigError("trials must be >= 1");
  if (spec.m_interior < 1) throw ConfigError("interior point count must be >= 1");
  if (spec.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (!(spec.optimizer.mu0 > 0.0)) throw ConfigError("optimizer.mu0 must be positive");
  if (!(spec.optimizer.nu > 1.0)) throw ConfigError("optimizer.nu must exceed 1");
  if (spec.optimizer.max_iters < 1) throw ConfigError("optimizer.max_iters must be >= 1");
  if (spec.optimizer.tol < 0.0) throw ConfigError("optimizer.tol must be nonnegative");

  if (spec.scheme == EncodingKind::Embedding) {
    if (spec.embed_dim < 1 || spec.embed_dim > regions)
      throw ConfigError("embed_dim must satisfy 1 <= D <= " + std::to_string(regions));
  } else if (spec.embed_dim != 0) {
    throw ConfigError("embed_dim is only valid with the embedding scheme");
  }
  if (spec.labels != LabelRule::Nominal && spec.scheme != EncodingKind::Scalar)
    throw ConfigError("label rules apply to the scalar encoding only");

  if (spec.mode == Mode::Approximate) {
    if (spec.m_interface != 0)
      throw ConfigError("approximate mode has no interface residuals; set interface points to 0");
    if (spec.m_boundary < 0) throw ConfigError("boundary point count must be >= 0");
    if (spec.labels == LabelRule::MeanF)
      throw ConfigError("mean_f labels need the solve mode (they average the source term)");
  } else {
    if (!problem.has_coefficients)
      throw ConfigError("problem '" + problem.name + "' has no coefficients; use approximate mode");
    if (spec.m_boundary < 1) throw ConfigError("solve mode needs boundary points");
    if (problem.map.num_interfaces() > 0 && spec.m_interface < 1)
      throw ConfigError("solve mode needs interface points");
    if (spec.labels == LabelRule::Mean)
      throw ConfigError("mean labels average the unknown solution; use mean_f in solve mode");
  }
}

int predicted_param_count(const ExperimentSpec& spec, const ProblemDefinition& problem) {
  EncodingScheme scheme;
  switch (spec.scheme) {
    case EncodingKind::Scalar: scheme = EncodingScheme::scalar_nominal(problem.map.num_regions()); break;
    case EncodingKind::OneHot: scheme = EncodingScheme::one_hot(problem.map.num_regions()); break;
    case EncodingKind::Embedding:
      scheme = EncodingScheme::embedding(problem.map.num_regions(), spec.embed_dim, 0);
      break;
  }
  return ParameterLayout::for_scheme(problem.dimension(), spec.neurons, scheme).size();
}

std::string encoding_description(const ExperimentSpec& spec) {
  switch (spec.scheme) {
    case EncodingKind::OneHot: return "onehot";
    case EncodingKind::Embedding: return "embedding(D=" + std::to_string(spec.embed_dim) + ")";
    case EncodingKind::Scalar:
      switch (spec.labels) {
        case LabelRule::Nominal: return "scalar(nominal)";
        case LabelRule::Mean: return "scalar(mean)";
        case LabelRule::MeanF: return "scalar(mean_f)";
      }
  }
  return "unknown";
}

std::pair<double, double> evaluate(const ParameterVector& params, const EncodingScheme& scheme,
                                   const ProblemDefinition& problem, int n_test, uint64_t seed) {
  if (n_test < 1) throw Error("evaluate: n_test must be >= 1");
  const auto points = problem.map.sample_interior(n_test, seed);
  double sum_sq = 0.0;
  double max_abs = 0.0;
  for (const Point& x : points) {
    const int region = problem.map.classify(x);
    const double err = problem.exact_in(region, x) -
                       forward(params, prepare(params, x, augmentation(params, scheme, region)));
    sum_sq += err * err;
    max_abs = std::max(max_abs, std::abs(err));
  }
  return {std::sqrt(sum_sq / static_cast<double>(points.size())), max_abs};
}

TrialResult run_trial(const ExperimentSpec& spec, const ProblemDefinition& problem,
                      int trial_index) {
  const auto start = clock_type::now();
  const uint64_t base = derive_seed(spec.seed, static_cast<uint64_t>(trial_index));
  const uint64_t sample_seed = derive_seed(base, 1);
  const uint64_t init_seed = derive_seed(base, 2);
  const uint64_t test_seed = derive_seed(base, 3);
  const uint64_t embed_seed = derive_seed(base, 4);

  const RegionMap& map = problem.map;
  const int regions = map.num_regions();

  // training points first: data-derived labels average over them
  SupervisedData data;
  PinnWorkset work;
  if (spec.mode == Mode::Approximate) {
    data = sample_supervised(problem, spec.m_interior, spec.m_boundary, sample_seed);
  } else {
    work = prepare_pinn(problem, sample_collocation(map, spec.m_interior, spec.m_boundary,
                                                    spec.m_interface, sample_seed));
  }

  EncodingScheme scheme;
  switch (spec.scheme) {
    case EncodingKind::OneHot:
      scheme = EncodingScheme::one_hot(regions);
      break;
    case EncodingKind::Embedding:
      scheme = EncodingScheme::embedding(regions, spec.embed_dim, embed_seed);
      break;
    case EncodingKind::Scalar:
      switch (spec.labels) {
        case LabelRule::Nominal:
          scheme = EncodingScheme::scalar_nominal(regions);
          break;
        case LabelRule::Mean: {
          std::vector<double> values(data.u.data(), data.u.data() + data.u.size());
          scheme = mean_labels(region_means(data.region, values, regions), false);
          break;
        }
        case LabelRule::MeanF:
          scheme = mean_labels(region_means(work.region_int, work.f_int, regions), true);
          break;
      }
      break;
  }

  const ParameterLayout layout =
      ParameterLayout::for_scheme(problem.dimension(), spec.neurons, scheme);
  ParameterVector params = make_initial_params(layout, scheme, init_seed);

  SystemBuilder builder;
  if (spec.mode == Mode::Approximate) {
    builder.full = [&](const Vector& theta) {
      ParameterVector p{layout, theta};
      return assemble_supervised(p, scheme, data, true);
    };
    builder.loss_only = [&](const Vector& theta) {
      ParameterVector p{layout, theta};
      return assemble_supervised(p, scheme, data, false).loss();
    };
  } else {
    builder.full = [&](const Vector& theta) {
      ParameterVector p{layout, theta};
      return assemble_pinn(p, scheme, work, true);
    };
    builder.loss_only = [&](const Vector& theta) {
      ParameterVector p{layout, theta};
      return assemble_pinn(p, scheme, work, false).loss();
    };
  }

  TrainingTrace trace = train(builder, params.flat, spec.optimizer);
  params.flat = trace.theta;

  TrialResult result;
  result.seed = base;
  result.scheme = scheme;
  result.final_loss = trace.final_loss;
  result.iterations = trace.iterations;
  result.termination = trace.termination;
  result.theta = trace.theta;
  result.steps = std::move(trace.steps);
  result.failed =
      !std::isfinite(trace.final_loss) || trace.final_loss > spec.fail_loss_threshold;
  std::tie(result.l2, result.linf) =
      evaluate(params, scheme, problem, spec.test_multiple * spec.m_interior, test_seed);
  result.seconds = seconds_since(start);
  return result;
}

TrialReport run_trials(const ExperimentSpec& spec) {
  const auto start = clock_type::now();
  const ProblemDefinition problem = catalog(spec.problem);
  validate_spec(spec, problem);

  TrialReport report;
  report.trials.resize(static_cast<size_t>(spec.trials));
  report.n_params = predicted_param_count(spec, problem);
  report.encoding = encoding_description(spec);

  const int jobs = std::min(spec.jobs, spec.trials);
  if (jobs > 1) set_dense_solver_threads(1);
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (int t = 0; t < spec.trials; ++t)
    report.trials[static_cast<size_t>(t)] = run_trial(spec, problem, t);
  if (jobs > 1)
    set_dense_solver_threads(std::max(1, static_cast<int>(std::thread::hardware_concurrency())));

  double sum_l2 = 0.0, sum_linf = 0.0;
  for (const TrialResult& r : report.trials) {
    if (r.failed)
      ++report.n_failed;
    else {
      sum_l2 += r.l2;
      sum_linf += r.linf;
    }
  }
  report.failed_to_converge = 2 * report.n_failed > spec.trials;
  const int ok = spec.trials - report.n_failed;
  if (ok > 0) {
    report.mean_l2 = sum_l2 / ok;
    report.mean_linf = sum_linf / ok;
  } else {
    report.mean_l2 = report.mean_linf = std::numeric_limits<double>::quiet_NaN();
  }
  report.wall_seconds = seconds_since(start);
  return report;
}

}  // namespace piecenet

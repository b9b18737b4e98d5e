#pragma once

#include <string>

#include "piecenet/optimizer.hpp"

namespace piecenet {

enum class Mode { Approximate, Solve };
enum class LabelRule { Nominal, Mean, MeanF };

// Resolved experiment description (the CLI layer maps JSON onto this).
struct ExperimentSpec {
  std::string problem;
  Mode mode = Mode::Solve;
  EncodingKind scheme = EncodingKind::Embedding;
  LabelRule labels = LabelRule::Nominal;
  int embed_dim = 0;
  int neurons = 50;
  int m_interior = 0;
  int m_boundary = 0;
  int m_interface = 0;  // per interface
  LMConfig optimizer;
  int trials = 10;
  uint64_t seed = 1;
  int jobs = 1;
  // A trial counts as failed when its final loss is non-finite or above this.
  double fail_loss_threshold = 1e-10;
  int test_multiple = 10;  // test points per trial = multiple * m_interior
};

// Semantic validation; throws ConfigError. Exit code 2 marks configuration
// mistakes a user can fix.
void validate_spec(const ExperimentSpec& spec, const ProblemDefinition& problem);

int predicted_param_count(const ExperimentSpec& spec, const ProblemDefinition& problem);
std::string encoding_description(const ExperimentSpec& spec);

// Root-mean-square and maximum error over freshly sampled interior points.
std::pair<double, double> evaluate(const ParameterVector& params, const EncodingScheme& scheme,
                                   const ProblemDefinition& problem, int n_test, uint64_t seed);

struct TrialResult {
  uint64_t seed = 0;
  double l2 = 0.0;
  double linf = 0.0;
  double final_loss = 0.0;
  int iterations = 0;
  Termination termination = Termination::MaxIterations;
  double seconds = 0.0;
  bool failed = false;
  EncodingScheme scheme;  // as used by this trial (labels may be data-derived)
  Vector theta;
  std::vector<StepRecord> steps;
};

struct TrialReport {
  std::vector<TrialResult> trials;
  int n_failed = 0;
  bool failed_to_converge = false;  // more than half the trials failed
  double mean_l2 = 0.0;             // over non-failed trials
  double mean_linf = 0.0;
  int n_params = 0;
  std::string encoding;
  double wall_seconds = 0.0;
};

TrialResult run_trial(const ExperimentSpec& spec, const ProblemDefinition& problem,
                      int trial_index);
TrialReport run_trials(const ExperimentSpec& spec);

}  // namespace piecenet

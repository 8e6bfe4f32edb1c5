#pragma once

// Monte Carlo experiments on the Jaynes-Cummings hybrid system, statistical
// trend tests, the invariant verification suites and the worked two-qubit
// example with vanishing EMIN.

#include "emin/ergotropy.hpp"
#include "emin/models.hpp"
#include "emin/quantum_state.hpp"

#include <json.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace emin {

struct ExperimentRecord {
  double g = 0.0;
  std::uint64_t sample_index = 0;
  double n_geo = 0.0;
  double n_xi = 0.0;
  double e_before = 0.0;
  double e_after = 0.0;
  double ep_before = 0.0;
  double ep_after = 0.0;

  /// |n_xi - [(e_before - ep_before) - (e_after - ep_after)]|
  double consistency_defect() const;
};

ExperimentRecord make_record(double g, std::uint64_t sample_index,
                             const BipartiteState &state,
                             const HamiltonianSpec &h,
                             const MeasurementBasis &basis);

/// Strict threshold below which an EMIN value counts as negative.
inline constexpr double kNegativeThreshold = -1e-10;

struct ScatterConfig {
  double g = 0.05;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  int field_dim = 2;
  Ensemble ensemble = Ensemble::mixed();
  int threads = 1;
};

/// One record per sample index, in index order. Sample i uses
/// RngStream{seed, i}, so the output does not depend on `threads`.
std::vector<ExperimentRecord> run_scatter(const ScatterConfig &config);

/// Regime checks attached to a scatter run: near-positivity at g = 0.05 and
/// exact positivity at g = 0. `applicable` is false for other couplings.
struct ScatterCheck {
  bool applicable = false;
  bool passed = true;
  double min_n_xi = 0.0;
  double threshold = 0.0;
  std::string description;
};

ScatterCheck check_scatter(double g, const std::vector<ExperimentRecord> &records);

struct ProbConfig {
  double g_min = 0.05;
  double g_max = 3.0;
  int g_steps = 12;
  std::uint64_t samples = 2000;
  std::uint64_t seed = 0;
  int field_dim = 2;
  Ensemble ensemble = Ensemble::mixed();
  int threads = 1;
};

struct ProbRow {
  double g = 0.0;
  std::uint64_t negatives = 0;
  std::uint64_t samples = 0;
  double probability = 0.0;
};

/// Evenly spaced grid g_min..g_max (inclusive). The same sampled states are
/// reused at every grid point.
std::vector<double> g_grid(double g_min, double g_max, int steps);
std::vector<ProbRow> run_prob(const ProbConfig &config);
std::string prob_to_csv(const std::vector<ProbRow> &rows);

struct MannKendall {
  double s = 0.0;
  double variance = 0.0;
  double z = 0.0;
  double p_increasing = 1.0; // one-sided p-value for an upward trend
  double p_decreasing = 1.0;
};

/// Mann-Kendall test with tie-corrected variance and continuity correction.
MannKendall mann_kendall(std::span<const double> series);

/// Lower edge of the saturation band for P[N_xi < 0].
inline constexpr double kSaturationLevel = 0.40;

struct TrendVerdict {
  std::size_t presaturation_points = 0;
  MannKendall test;
  bool increasing = false; // p_increasing < alpha on the pre-saturation prefix
};

/// Runs Mann-Kendall on the prefix of `probabilities` up to and including the
/// first point at or above kSaturationLevel (or the whole series if none).
TrendVerdict trend_up_to_saturation(std::span<const double> probabilities,
                                    double alpha = 0.05);

// ---------------------------------------------------------------- verify

struct InvariantResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  /// Audits report counts but never fail the suite.
  bool audit_only = false;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return audit_only || failures == 0; }
};

enum class VerifySuite { Linalg, States, Oracle, Theorems, Routes, All };

VerifySuite parse_suite(const std::string &name);
std::string suite_name(VerifySuite suite);

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<InvariantResult> results;
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

VerifyReport run_verify(VerifySuite suite, std::uint64_t seed);

// Individual suites, exposed for the acceptance tests.
std::vector<InvariantResult> verify_linalg(std::uint64_t seed);
std::vector<InvariantResult> verify_states(std::uint64_t seed);
std::vector<InvariantResult> verify_oracle(std::uint64_t seed,
                                           int instances = 200);
std::vector<InvariantResult> verify_theorems(std::uint64_t seed);
std::vector<InvariantResult> verify_routes(std::uint64_t seed,
                                           int instances = 500);

/// Minimum of sum_k r_k e_{perm(k)} over every permutation of the levels.
double brute_force_passive_energy(const RealVector &populations,
                                  const RealVector &energies);

// ------------------------------------------------------- worked example

struct Obs1Report {
  double alpha = 0.0;
  double beta = 0.0;
  double xi_rho = 0.0;
  double xi_measured = 0.0;
  double emin = 0.0;
  double n_geo = 0.0;
  double expected_n_geo = 0.0;
  bool passed = false;

  nlohmann::json to_json() const;
};

/// psi = alpha|00> + beta|11>, H = sigma_x (x) sigma_z, measured in the
/// computational basis of A. Requires 0 < alpha < 1.
Obs1Report example_obs1(double alpha);

} // namespace emin

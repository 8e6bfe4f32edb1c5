#include "emin/experiments.hpp"

#include "emin/errors.hpp"
#include "emin/io.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <thread>

namespace emin {

using nlohmann::json;

// ------------------------------------------------------------ records

double ExperimentRecord::consistency_defect() const {
  return std::abs(n_xi - ((e_before - ep_before) - (e_after - ep_after)));
}

ExperimentRecord make_record(double g, std::uint64_t sample_index,
                             const BipartiteState &state,
                             const HamiltonianSpec &h,
                             const MeasurementBasis &basis) {
  const BipartiteState measured = measure_local(state, basis);
  ExperimentRecord r;
  r.g = g;
  r.sample_index = sample_index;
  r.n_geo = hs_norm_sq(state.rho() - measured.rho());
  r.e_before = energy(state.rho(), h.total());
  r.e_after = energy(measured.rho(), h.total());
  r.ep_before = passive_energy(state.rho(), h);
  r.ep_after = passive_energy(measured.rho(), h);
  r.n_xi = (r.e_before - r.ep_before) - (r.e_after - r.ep_after);
  return r;
}

namespace {

template <typename Fn>
void parallel_for(std::uint64_t n, int threads, Fn &&fn) {
  const auto workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (workers == 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < n; i += workers)
          fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  for (auto &e : errors)
    if (e)
      std::rethrow_exception(e);
}

std::vector<BipartiteState> sample_jc_states(std::uint64_t samples,
                                             std::uint64_t seed, int field_dim,
                                             const Ensemble &ensemble,
                                             int threads) {
  std::vector<std::optional<BipartiteState>> slots(samples);
  parallel_for(samples, threads, [&](std::uint64_t i) {
    slots[i] = sample_state_diagonal_marginal(2, field_dim, ensemble,
                                              RngStream{seed, i, 0});
  });
  std::vector<BipartiteState> out;
  out.reserve(samples);
  for (auto &s : slots)
    out.push_back(std::move(*s));
  return out;
}

} // namespace

std::vector<ExperimentRecord> run_scatter(const ScatterConfig &config) {
  if (config.samples < 1)
    throw DomainError("at least one sample is required");
  const HamiltonianSpec h = jaynes_cummings({config.g, config.field_dim});
  const MeasurementBasis basis = MeasurementBasis::computational(2);
  std::vector<ExperimentRecord> records(config.samples);
  parallel_for(config.samples, config.threads, [&](std::uint64_t i) {
    const BipartiteState state = sample_state_diagonal_marginal(
        2, config.field_dim, config.ensemble, RngStream{config.seed, i, 0});
    records[i] = make_record(config.g, i, state, h, basis);
  });
  return records;
}

ScatterCheck check_scatter(double g, const std::vector<ExperimentRecord> &records) {
  ScatterCheck out;
  out.min_n_xi = std::numeric_limits<double>::infinity();
  for (const auto &r : records)
    out.min_n_xi = std::min(out.min_n_xi, r.n_xi);
  if (g == 0.0) {
    out.applicable = true;
    out.threshold = -1e-8;
    out.description = "non-interacting regime: every n_xi >= -1e-8";
  } else if (std::abs(g - 0.05) < 1e-12) {
    out.applicable = true;
    out.threshold = -0.02;
    out.description = "weak coupling: min n_xi >= -0.02";
  }
  if (out.applicable)
    out.passed = out.min_n_xi >= out.threshold;
  return out;
}

std::vector<double> g_grid(double g_min, double g_max, int steps) {
  if (steps < 1 || !(g_max >= g_min))
    throw DomainError("invalid coupling grid");
  std::vector<double> grid;
  if (steps == 1)
    return {g_min};
  for (int k = 0; k < steps; ++k)
    grid.push_back(g_min + (g_max - g_min) * k / (steps - 1));
  return grid;
}

std::vector<ProbRow> run_prob(const ProbConfig &config) {
  if (config.samples < 1)
    throw DomainError("at least one sample is required");
  const std::vector<double> grid =
      g_grid(config.g_min, config.g_max, config.g_steps);
  const std::vector<BipartiteState> states =
      sample_jc_states(config.samples, config.seed, config.field_dim,
                       config.ensemble, config.threads);
  const MeasurementBasis basis = MeasurementBasis::computational(2);
  std::vector<ProbRow> rows;
  for (double g : grid) {
    const HamiltonianSpec h = jaynes_cummings({g, config.field_dim});
    std::vector<char> negative(config.samples, 0);
    parallel_for(config.samples, config.threads, [&](std::uint64_t i) {
      negative[i] = make_record(g, i, states[i], h, basis).n_xi <
                    kNegativeThreshold;
    });
    ProbRow row;
    row.g = g;
    row.samples = config.samples;
    row.negatives = static_cast<std::uint64_t>(
        std::count(negative.begin(), negative.end(), 1));
    row.probability =
        static_cast<double>(row.negatives) / static_cast<double>(row.samples);
    rows.push_back(row);
  }
  return rows;
}

std::string prob_to_csv(const std::vector<ProbRow> &rows) {
  std::string out = "g,negatives,samples,probability\n";
  for (const auto &r : rows)
    out += io::format_double(r.g) + "," + std::to_string(r.negatives) + "," +
           std::to_string(r.samples) + "," + io::format_double(r.probability) +
           "\n";
  return out;
}

// --------------------------------------------------------- trend tests

MannKendall mann_kendall(std::span<const double> series) {
  MannKendall out;
  const std::size_t n = series.size();
  if (n < 2)
    return out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      out.s += (series[j] > series[i]) - (series[j] < series[i]);

  std::map<double, int> ties;
  for (double v : series)
    ++ties[v];
  double var = n * (n - 1.0) * (2.0 * n + 5.0);
  for (const auto &[value, t] : ties)
    var -= t * (t - 1.0) * (2.0 * t + 5.0);
  out.variance = var / 18.0;
  if (out.variance <= 0.0)
    return out;
  const double sd = std::sqrt(out.variance);
  if (out.s > 0)
    out.z = (out.s - 1.0) / sd;
  else if (out.s < 0)
    out.z = (out.s + 1.0) / sd;
  out.p_increasing = 0.5 * std::erfc(out.z / std::numbers::sqrt2);
  out.p_decreasing = 0.5 * std::erfc(-out.z / std::numbers::sqrt2);
  return out;
}

TrendVerdict trend_up_to_saturation(std::span<const double> probabilities,
                                    double alpha) {
  TrendVerdict out;
  std::size_t end = probabilities.size();
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] >= kSaturationLevel) {
      end = k + 1;
      break;
    }
  }
  out.presaturation_points = end;
  out.test = mann_kendall(probabilities.first(end));
  out.increasing = out.test.p_increasing < alpha;
  return out;
}

// ------------------------------------------------------------- verify

namespace {

// Separate RNG lanes per invariant family so suites stay independent.
enum Lane : std::uint64_t {
  kLaneEig = 1,
  kLanePtraceA,
  kLanePtraceB,
  kLaneKron,
  kLaneSpectral,
  kLaneSchmidt,
  kLaneOpSchmidt,
  kLaneLocalU,
  kLaneHsExpand,
  kLaneMajor,
  kLaneOracleState,
  kLaneOracleH,
  kLanePosState,
  kLanePosH,
  kLaneT1State,
  kLaneT1H,
  kLaneSchurState,
  kLaneSchurH,
  kLaneShift,
  kLaneProduct,
  kLaneGibbs,
  kLaneBounds,
  kLaneGap,
  kLaneRoutePure,
  kLaneRouteMixed,
  kLaneRouteNonInt,
  kLaneRouteH,
  kLaneMaxEnt,
};

class Tally {
public:
  Tally(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void observe(double deviation) {
    ++result_.checks;
    if (!(deviation <= result_.tolerance))
      ++result_.failures;
    if (std::isnan(deviation))
      result_.max_deviation = deviation;
    else
      result_.max_deviation = std::max(result_.max_deviation, deviation);
  }

  InvariantResult &result() { return result_; }

private:
  InvariantResult result_;
};

struct Dims {
  int a;
  int b;
};

constexpr std::array<Dims, 4> kSmallDims = {{{2, 2}, {2, 3}, {3, 2}, {3, 3}}};
constexpr std::array<Dims, 2> kRouteDims = {{{2, 2}, {2, 3}}};

RealVector descending_spectrum(const ComplexMatrix &m) {
  return eigvals_hermitian(m).reverse().eval();
}

double max_abs(const ComplexMatrix &m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

ComplexMatrix exp_i(const ComplexMatrix &h, double theta) {
  // exp(-i theta h) for Hermitian h.
  const HermitianEig eig = eig_hermitian(h);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k)
    phases(k) = std::polar(1.0, -theta * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

BipartiteState random_state(Dims d, bool pure, const RngStream &stream) {
  return sample_state(d.a, d.b, pure ? Ensemble::pure() : Ensemble::mixed(),
                      stream);
}

} // namespace

double brute_force_passive_energy(const RealVector &populations,
                                  const RealVector &energies) {
  if (populations.size() != energies.size())
    throw DimensionMismatch("populations and energies differ in length");
  std::vector<int> perm(energies.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double e = 0.0;
    for (std::size_t k = 0; k < perm.size(); ++k)
      e += populations(k) * energies(perm[k]);
    best = std::min(best, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<InvariantResult> verify_linalg(std::uint64_t seed) {
  Tally recon("eigen_reconstruction", 1e-10);
  Tally ortho("eigenvector_orthonormality", 1e-10);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng({seed, i, kLaneEig});
    const int dim = 2 + static_cast<int>(i % 15);
    const ComplexMatrix m = sample_hermitian(dim, rng);
    const HermitianEig eig = eig_hermitian(m);
    const ComplexMatrix back = eig.vectors *
                               eig.values.cast<cplx>().asDiagonal() *
                               eig.vectors.adjoint();
    recon.observe((back - m).norm() / m.norm());
    ortho.observe(max_abs(eig.vectors.adjoint() * eig.vectors -
                          ComplexMatrix::Identity(dim, dim)));
  }

  Tally ptrace("partial_trace_of_product", 1e-12);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng ra({seed, i, kLanePtraceA});
    Rng rb({seed, i, kLanePtraceB});
    const int na = 2 + static_cast<int>(i % 3);
    const int nb = 2 + static_cast<int>((i / 3) % 3);
    const ComplexMatrix a = ginibre_density(ra, na, na);
    const ComplexMatrix b = ginibre_density(rb, nb, nb);
    const ComplexMatrix prod = kron(a, b);
    ptrace.observe(std::max(
        max_abs(partial_trace(prod, na, nb, Subsystem::A) - a),
        max_abs(partial_trace(prod, na, nb, Subsystem::B) - b)));
  }

  Tally ktrace("kron_trace_factorizes", 1e-12);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng({seed, i, kLaneKron});
    const int na = 1 + static_cast<int>(i % 4);
    const int nb = 1 + static_cast<int>((i / 4) % 4);
    const ComplexMatrix a = ginibre_matrix(rng, na, na);
    const ComplexMatrix b = ginibre_matrix(rng, nb, nb);
    const cplx lhs = kron(a, b).trace();
    const cplx rhs = a.trace() * b.trace();
    ktrace.observe(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
  }

  Tally mapping("spectral_mapping", 1e-10);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng({seed, i, kLaneSpectral});
    const int dim = 2 + static_cast<int>(i % 7);
    const ComplexMatrix m = sample_hermitian(dim, rng);
    auto f = [](double x) { return x * x * x - 2.0 * x + std::exp(-x * x); };
    const RealVector lam = eigvals_hermitian(m);
    std::vector<double> expected(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
      expected[k] = f(lam(k));
    std::sort(expected.begin(), expected.end());
    const RealVector got = eigvals_hermitian(func_hermitian(m, f));
    double dev = 0.0;
    double scale = 1.0;
    for (Eigen::Index k = 0; k < got.size(); ++k) {
      dev = std::max(dev, std::abs(got(k) - expected[k]));
      scale = std::max(scale, std::abs(expected[k]));
    }
    mapping.observe(dev / scale);
  }

  return {recon.result(), ortho.result(), ptrace.result(), ktrace.result(),
          mapping.result()};
}

std::vector<InvariantResult> verify_states(std::uint64_t seed) {
  Tally schmidt_marg("schmidt_equals_marginal_spectrum", 1e-10);
  Tally schmidt_fid("schmidt_reconstruction_infidelity", 1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    Rng rng({seed, i, kLaneSchmidt});
    const ComplexVector psi = haar_vector(rng, d.a * d.b);
    const PureSchmidt s = schmidt_pure(psi, d.a, d.b);
    const RealVector marg = descending_spectrum(
        partial_trace(psi * psi.adjoint(), d.a, d.b, Subsystem::A));
    double dev = 0.0;
    for (Eigen::Index k = 0; k < marg.size(); ++k) {
      const double lam = k < s.coefficients.size() ? s.coefficients(k) : 0.0;
      dev = std::max(dev, std::abs(lam - marg(k)));
    }
    schmidt_marg.observe(dev);
    ComplexVector back = ComplexVector::Zero(d.a * d.b);
    for (Eigen::Index k = 0; k < s.coefficients.size(); ++k)
      back += std::sqrt(s.coefficients(k)) *
              kron(s.basis_a.col(k), s.basis_b.col(k));
    schmidt_fid.observe(1.0 - std::norm(back.dot(psi)));
  }

  Tally op_recon("operator_schmidt_reconstruction", 1e-9);
  Tally op_ortho("operator_schmidt_orthonormality", 1e-9);
  Tally op_local("operator_schmidt_local_unitary_invariance", 1e-9);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    Rng rng({seed, i, kLaneOpSchmidt});
    const ComplexMatrix h = sample_hermitian(d.a * d.b, rng);
    const OperatorSchmidt os = operator_schmidt(h, d.a, d.b);
    op_recon.observe((os.reconstruct() - h).norm());
    double dev = 0.0;
    for (std::size_t l = 0; l < os.strengths.size(); ++l)
      for (std::size_t k = 0; k < os.strengths.size(); ++k) {
        const double delta = l == k ? 1.0 : 0.0;
        dev = std::max(dev, std::abs(hs_inner(os.factors_a[l], os.factors_a[k]) - delta));
        dev = std::max(dev, std::abs(hs_inner(os.factors_b[l], os.factors_b[k]) - delta));
      }
    op_ortho.observe(dev);

    Rng ru({seed, i, kLaneLocalU});
    const ComplexMatrix u = kron(haar_unitary(ru, d.a), haar_unitary(ru, d.b));
    const OperatorSchmidt rotated =
        operator_schmidt(u * h * u.adjoint(), d.a, d.b);
    const std::size_t terms =
        std::max(os.strengths.size(), rotated.strengths.size());
    double sdev = 0.0;
    for (std::size_t l = 0; l < terms; ++l) {
      const double x = l < os.strengths.size() ? os.strengths[l] : 0.0;
      const double y = l < rotated.strengths.size() ? rotated.strengths[l] : 0.0;
      sdev = std::max(sdev, std::abs(x - y));
    }
    op_local.observe(sdev);
  }

  Tally hs_recon("hs_expansion_reconstruction", 1e-9);
  Tally hs_real("hs_expansion_real_coordinates", 1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneHsExpand});
    const HsExpansion hs = hs_expand(s);
    hs_recon.observe((hs.reconstruct() - s.rho()).norm());
    hs_real.observe(hs.max_imag_residue);
  }

  Tally major("measurement_majorized_by_state", 1e-9);
  Tally trace_pres("measurement_trace_preserving", 1e-12);
  Tally positivity("measurement_positivity", 1e-10);
  Tally idempotent("measurement_idempotent", 1e-12);
  Tally marg_pres("measurement_preserves_marginal", 1e-10);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 3 == 0, {seed, i, kLaneMajor});
    const MeasurementBasis basis = marginal_basis(s);
    const BipartiteState m = measure_local(s, basis);
    const RealVector before = descending_spectrum(s.rho());
    const RealVector after = descending_spectrum(m.rho());
    double excess = 0.0;
    double sum_before = 0.0;
    double sum_after = 0.0;
    for (Eigen::Index k = 0; k < before.size(); ++k) {
      sum_before += before(k);
      sum_after += after(k);
      excess = std::max(excess, sum_after - sum_before);
    }
    major.observe(excess);
    trace_pres.observe(std::abs(m.rho().trace().real() - 1.0));
    positivity.observe(-after.minCoeff());
    idempotent.observe(max_abs(measure_local(m, basis).rho() - m.rho()));
    marg_pres.observe(
        max_abs(m.marginal(Subsystem::A) - s.marginal(Subsystem::A)));
  }

  Tally unital("measurement_unital_exact", 0.0);
  Tally unital_random("measurement_unital_random_basis", 1e-14);
  for (const Dims d : kSmallDims) {
    const ComplexMatrix mixed = identity(d.a * d.b) / double(d.a * d.b);
    const BipartiteState s = BipartiteState::from_density(mixed, d.a, d.b);
    unital.observe(max_abs(measure_local(s, marginal_basis(s)).rho() - mixed));
    unital.observe(max_abs(
        measure_local(s, MeasurementBasis::computational(d.a)).rho() - mixed));
    Rng rng({seed, static_cast<std::uint64_t>(d.a * 10 + d.b), kLaneMajor});
    unital_random.observe(max_abs(
        measure_local(s, MeasurementBasis::from_vectors(haar_unitary(rng, d.a)))
            .rho() -
        mixed));
  }

  return {schmidt_marg.result(), schmidt_fid.result(), op_recon.result(),
          op_ortho.result(),     op_local.result(),    hs_recon.result(),
          hs_real.result(),      major.result(),       trace_pres.result(),
          positivity.result(),   idempotent.result(),  marg_pres.result(),
          unital.result(),       unital_random.result()};
}

std::vector<InvariantResult> verify_oracle(std::uint64_t seed, int instances) {
  Tally oracle("passive_energy_permutation_oracle", 1e-12);
  Tally nonneg("ergotropy_nonnegative", 1e-10);
  Tally report("ergotropy_report_consistency", 1e-12);
  Tally commute("passive_state_commutes_with_h", 1e-10);
  for (int i = 0; i < instances; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    const int dim = 2 + i % 5;
    Rng rs({seed, idx, kLaneOracleState});
    Rng rh({seed, idx, kLaneOracleH});
    ComplexMatrix rho;
    if (i % 2 == 0) {
      const ComplexVector psi = haar_vector(rs, dim);
      rho = psi * psi.adjoint();
    } else {
      rho = ginibre_density(rs, dim, 1 + i % dim);
    }
    const HamiltonianSpec h =
        HamiltonianSpec::interacting(sample_hermitian(dim, rh), 1, dim);
    const ErgotropyReport rep = passive(rho, h);
    const double brute =
        brute_force_passive_energy(clamped_spectrum(rho), h.spectrum());
    oracle.observe(std::abs(rep.passive_energy - brute));
    nonneg.observe(-rep.ergotropy);
    report.observe(std::abs(rep.ergotropy - (rep.energy - rep.passive_energy)));
    commute.observe(max_abs(rep.passive_state * h.total() -
                            h.total() * rep.passive_state));
  }
  return {oracle.result(), nonneg.result(), report.result(), commute.result()};
}

std::vector<InvariantResult> verify_theorems(std::uint64_t seed) {
  std::vector<InvariantResult> out;

  // Positivity under non-interacting Hamiltonians, pure and mixed.
  for (bool pure : {true, false}) {
    Tally pos(pure ? "noninteracting_emin_positive_pure"
                   : "noninteracting_emin_positive_mixed",
              1e-10);
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const Dims d = kSmallDims[i % kSmallDims.size()];
      const std::uint64_t index = pure ? i : i + 1000;
      const BipartiteState s = random_state(d, pure, {seed, index, kLanePosState});
      const HamiltonianSpec h =
          sample_noninteracting_hamiltonian(d.a, d.b, {seed, index, kLanePosH});
      pos.observe(-emin_direct(s, h, marginal_basis(s)));
    }
    out.push_back(pos.result());
  }

  // Invariance under I (x) exp(-i theta B), which commutes with A(x)I + I(x)B.
  Tally t1("restricted_local_unitary_invariance", 1e-8);
  Tally t1_xi("commuting_unitary_preserves_ergotropy", 1e-8);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneT1State});
    Rng rng({seed, i, kLaneT1H});
    const ComplexMatrix a = sample_hermitian(d.a, rng);
    const ComplexMatrix b = sample_hermitian(d.b, rng);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const HamiltonianSpec h = HamiltonianSpec::non_interacting(a, b);
    const ComplexMatrix u = kron(identity(d.a), exp_i(b, theta));
    const BipartiteState moved =
        BipartiteState::from_density(u * s.rho() * u.adjoint(), d.a, d.b);
    t1.observe(std::abs(emin_direct(moved, h, marginal_basis(moved)) -
                        emin_direct(s, h, marginal_basis(s))));
    t1_xi.observe(std::abs(ergotropy(moved.rho(), h) - ergotropy(s.rho(), h)));
  }
  out.push_back(t1.result());
  out.push_back(t1_xi.result());

  // E_p(Pi(rho)) >= E_p(rho) holds for every Hamiltonian.
  Tally schur("passive_energy_schur_concavity_interacting", 1e-10);
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s =
        random_state(d, i % 2 == 0, {seed, i, kLaneSchurState});
    const HamiltonianSpec h = sample_hamiltonian(d.a, d.b, {seed, i, kLaneSchurH});
    const BipartiteState m = measure_local(s, marginal_basis(s));
    schur.observe(passive_energy(s.rho(), h) - passive_energy(m.rho(), h));
  }
  out.push_back(schur.result());

  Tally shift("shift_covariance", 1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneShift});
    Rng rng({seed, i + 100000, kLaneShift});
    const HamiltonianSpec h =
        i % 2 == 0 ? sample_hamiltonian(d.a, d.b, {seed, i, kLaneRouteH})
                   : sample_noninteracting_hamiltonian(d.a, d.b,
                                                       {seed, i, kLaneRouteH});
    const double c = 10.0 * rng.uniform() - 5.0;
    const HamiltonianSpec hc = h.shifted(c);
    const MeasurementBasis basis = marginal_basis(s);
    const double de = energy(s.rho(), hc.total()) - energy(s.rho(), h.total());
    const double dep = passive_energy(s.rho(), hc) - passive_energy(s.rho(), h);
    double dev = std::max(std::abs(de - c), std::abs(dep - c));
    dev = std::max(dev, std::abs(ergotropy(s.rho(), hc) - ergotropy(s.rho(), h)));
    dev = std::max(dev, std::abs(emin_direct(s, hc, basis) -
                                 emin_direct(s, h, basis)));
    shift.observe(dev);
  }
  out.push_back(shift.result());

  Tally product("product_state_zero_emin", 1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    Rng rng({seed, i, kLaneProduct});
    const ComplexMatrix ra = ginibre_density(rng, d.a, 1 + int(i % d.a));
    const ComplexMatrix rb = ginibre_density(rng, d.b, 1 + int(i % d.b));
    const BipartiteState s = BipartiteState::from_density(kron(ra, rb), d.a, d.b);
    const HamiltonianSpec h = sample_hamiltonian(d.a, d.b, {seed, i, kLaneRouteH});
    product.observe(std::abs(emin_direct(s, h, marginal_basis(s))));
  }
  out.push_back(product.result());

  Tally gibbs("gibbs_relative_entropy_identity", 1e-8);
  Tally gibbs_self("gibbs_self_relative_entropy", 1e-10);
  constexpr std::array<double, 3> betas = {0.5, 1.0, 2.0};
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneGibbs});
    const HamiltonianSpec h =
        sample_hamiltonian(d.a, d.b, {seed, i + 100000, kLaneGibbs});
    const double beta = betas[i % betas.size()];
    const ComplexMatrix thermal = gibbs_state(h.total(), beta);
    const double lhs = relative_entropy(s.rho(), thermal);
    const double rhs = beta * energy(s.rho() - thermal, h.total()) -
                       entropy(s.rho()) + entropy(thermal);
    gibbs.observe(std::abs(lhs - rhs));
    gibbs_self.observe(std::abs(relative_entropy(thermal, thermal)));
  }
  out.push_back(gibbs.result());
  out.push_back(gibbs_self.result());

  Tally gap_rel("ergotropic_gap_difference_equals_emin", 1e-8);
  Tally gap_pos("ergotropic_gap_nonnegative", 1e-10);
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneGap});
    const HamiltonianSpec h = sample_noninteracting_hamiltonian(
        d.a, d.b, {seed, i + 100000, kLaneGap});
    const MeasurementBasis basis = marginal_basis(s);
    const BipartiteState m = measure_local(s, basis);
    const double gap = ergotropic_gap(s, h);
    gap_rel.observe(
        std::abs(gap - ergotropic_gap(m, h) - emin_direct(s, h, basis)));
    gap_pos.observe(-gap);
  }
  out.push_back(gap_rel.result());
  out.push_back(gap_pos.result());

  // Relative-entropy bounds: the exact decomposition is an invariant, the
  // orientation of each printed bound is audited.
  Tally bounds_identity("bounds_relative_entropy_decomposition", 1e-8);
  Tally orientation("bounds_orientation_audit", 0.0);
  std::uint64_t lower_violations = 0;
  std::uint64_t upper_below_violations = 0;
  std::uint64_t upper_above_violations = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const BipartiteState s = random_state(d, i % 2 == 0, {seed, i, kLaneBounds});
    const HamiltonianSpec h = sample_noninteracting_hamiltonian(
        d.a, d.b, {seed, i + 100000, kLaneBounds});
    const EminBounds b = emin_bounds(s, h, marginal_basis(s), 1.0);
    bounds_identity.observe(std::abs(b.identity_residual));
    lower_violations += !b.lower_holds;
    upper_below_violations += !b.upper_below;
    upper_above_violations += !b.upper_above;
    orientation.observe(b.lower_holds ? 0.0 : b.lower - b.beta_emin);
  }
  out.push_back(bounds_identity.result());
  InvariantResult audit = orientation.result();
  audit.audit_only = true;
  audit.details = {{"samples", 200},
                   {"lower_le_beta_emin_violations", lower_violations},
                   {"upper_le_beta_emin_violations", upper_below_violations},
                   {"beta_emin_le_upper_violations", upper_above_violations}};
  out.push_back(std::move(audit));
  return out;
}

std::vector<InvariantResult> verify_routes(std::uint64_t seed, int instances) {
  const auto n = static_cast<std::uint64_t>(instances);
  Tally pure("routes_pure_direct_closed_mixed", 1e-8);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Dims d = kRouteDims[i % kRouteDims.size()];
    Rng rng({seed, i, kLaneRoutePure});
    const ComplexVector psi = haar_vector(rng, d.a * d.b);
    const BipartiteState s = BipartiteState::from_pure(psi, d.a, d.b);
    const HamiltonianSpec h = sample_hamiltonian(d.a, d.b, {seed, i, kLaneRouteH});
    const MeasurementBasis basis = schmidt_basis(schmidt_pure(psi, d.a, d.b));
    const double direct = emin_direct(s, h, basis);
    const double closed = emin_pure_closed(psi, h);
    const double mixed = emin_mixed_closed(s, h, basis);
    pure.observe(std::max({std::abs(direct - closed), std::abs(direct - mixed),
                           std::abs(closed - mixed)}));
  }

  Tally mixed("routes_mixed_direct_closed", 1e-8);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Dims d = kRouteDims[i % kRouteDims.size()];
    const BipartiteState s = random_state(d, false, {seed, i, kLaneRouteMixed});
    const HamiltonianSpec h =
        sample_hamiltonian(d.a, d.b, {seed, i + n, kLaneRouteH});
    const MeasurementBasis basis = marginal_basis(s);
    mixed.observe(
        std::abs(emin_direct(s, h, basis) - emin_mixed_closed(s, h, basis)));
  }

  Tally nonint("routes_noninteracting_all", 1e-8);
  for (std::uint64_t i = 0; i < n; ++i) {
    const Dims d = kRouteDims[i % kRouteDims.size()];
    const bool is_pure = i % 2 == 0;
    Rng rng({seed, i, kLaneRouteNonInt});
    ComplexMatrix rho;
    ComplexVector psi;
    if (is_pure) {
      psi = haar_vector(rng, d.a * d.b);
      rho = psi * psi.adjoint();
    } else {
      rho = ginibre_density(rng, d.a * d.b, d.a * d.b);
    }
    const BipartiteState s = BipartiteState::from_density(rho, d.a, d.b);
    const HamiltonianSpec h = sample_noninteracting_hamiltonian(
        d.a, d.b, {seed, i + 2 * n, kLaneRouteH});
    const MeasurementBasis basis = marginal_basis(s);
    std::vector<double> values = {emin_direct(s, h, basis),
                                  emin_noninteracting(s, h, basis),
                                  emin_mixed_closed(s, h, basis)};
    if (is_pure)
      values.push_back(emin_pure_closed(psi, h));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    nonint.observe(*hi - *lo);
  }

  Tally maxent("routes_maximally_entangled", 1e-8);
  for (std::uint64_t i = 0; i < std::min<std::uint64_t>(n, 100); ++i) {
    const Dims d = kSmallDims[i % kSmallDims.size()];
    const int rank = std::min(d.a, d.b);
    Rng rng({seed, i, kLaneMaxEnt});
    const ComplexMatrix ua = haar_unitary(rng, d.a);
    const ComplexMatrix ub = haar_unitary(rng, d.b);
    ComplexVector phi = ComplexVector::Zero(d.a * d.b);
    for (int k = 0; k < rank; ++k)
      phi(k * d.b + k) = 1.0 / std::sqrt(double(rank));
    const ComplexVector psi = kron(ua, ub) * phi;
    const BipartiteState s = BipartiteState::from_pure(psi, d.a, d.b);
    const HamiltonianSpec h = sample_noninteracting_hamiltonian(
        d.a, d.b, {seed, i + 3 * n, kLaneRouteH});
    const MaxEntEmin closed = emin_maxent(h, rank);
    const double direct =
        emin_direct(s, h, MeasurementBasis::from_vectors(ua, true));
    maxent.observe(std::max(std::abs(closed.value - direct),
                            std::abs(closed.level_spacing_form - direct)));
  }

  return {pure.result(), mixed.result(), nonint.result(), maxent.result()};
}

VerifySuite parse_suite(const std::string &name) {
  static const std::map<std::string, VerifySuite> names = {
      {"linalg", VerifySuite::Linalg},   {"states", VerifySuite::States},
      {"oracle", VerifySuite::Oracle},   {"theorems", VerifySuite::Theorems},
      {"routes", VerifySuite::Routes},   {"all", VerifySuite::All}};
  const auto it = names.find(name);
  if (it == names.end())
    throw DomainError("unknown verify suite '" + name + "'");
  return it->second;
}

std::string suite_name(VerifySuite suite) {
  switch (suite) {
  case VerifySuite::Linalg: return "linalg";
  case VerifySuite::States: return "states";
  case VerifySuite::Oracle: return "oracle";
  case VerifySuite::Theorems: return "theorems";
  case VerifySuite::Routes: return "routes";
  case VerifySuite::All: return "all";
  }
  return "unknown";
}

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const InvariantResult &r) { return r.passed(); });
}

json VerifyReport::to_json() const {
  json items = json::array();
  for (const InvariantResult &r : results) {
    json item = {{"name", r.name},
                 {"checks", r.checks},
                 {"failures", r.failures},
                 {"max_deviation", r.max_deviation},
                 {"tolerance", r.tolerance},
                 {"passed", r.passed()}};
    if (r.audit_only)
      item["audit_only"] = true;
    if (!r.details.empty())
      item["details"] = r.details;
    items.push_back(std::move(item));
  }
  return {{"suite", suite},
          {"seed", seed},
          {"passed", passed()},
          {"seconds", seconds},
          {"invariants", std::move(items)}};
}

VerifyReport run_verify(VerifySuite suite, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.suite = suite_name(suite);
  report.seed = seed;
  auto append = [&](std::vector<InvariantResult> part) {
    for (auto &r : part)
      report.results.push_back(std::move(r));
  };
  const bool all = suite == VerifySuite::All;
  if (all || suite == VerifySuite::Linalg)
    append(verify_linalg(seed));
  if (all || suite == VerifySuite::States)
    append(verify_states(seed));
  if (all || suite == VerifySuite::Oracle)
    append(verify_oracle(seed));
  if (all || suite == VerifySuite::Theorems)
    append(verify_theorems(seed));
  if (all || suite == VerifySuite::Routes)
    append(verify_routes(seed));
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

// ------------------------------------------------------ worked example

json Obs1Report::to_json() const {
  return {{"alpha", alpha},     {"beta", beta},
          {"xi_rho", xi_rho},   {"xi_measured", xi_measured},
          {"emin", emin},       {"n_geo", n_geo},
          {"expected", {{"xi_rho", 1.0}, {"xi_measured", 1.0}, {"emin", 0.0},
                        {"n_geo", expected_n_geo}}},
          {"passed", passed}};
}

Obs1Report example_obs1(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("alpha must lie strictly between 0 and 1 so that "
                      "beta = sqrt(1 - alpha^2) is nonzero");
  Obs1Report r;
  r.alpha = alpha;
  r.beta = std::sqrt(1.0 - alpha * alpha);
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = r.alpha;
  psi(3) = r.beta;
  const BipartiteState s = BipartiteState::from_pure(psi, 2, 2);
  const HamiltonianSpec h =
      HamiltonianSpec::interacting(kron(pauli_x(), pauli_z()), 2, 2);
  const MeasurementBasis basis = MeasurementBasis::computational(2);
  const BipartiteState measured = measure_local(s, basis);
  r.xi_rho = ergotropy(s.rho(), h);
  r.xi_measured = ergotropy(measured.rho(), h);
  r.emin = emin_direct(s, h, basis);
  r.n_geo = geometric_min(s, basis);
  r.expected_n_geo = 2.0 * alpha * alpha * r.beta * r.beta;
  r.passed = std::abs(r.xi_rho - 1.0) <= 1e-10 &&
             std::abs(r.xi_measured - 1.0) <= 1e-10 &&
             std::abs(r.emin) <= 1e-10 &&
             std::abs(r.n_geo - r.expected_n_geo) <= 1e-12;
  return r;
}

} // namespace emin

// Acceptance checks: one PASS/FAIL line per criterion.
//   acceptance [--only N] [--seed S]

#include "emin/experiments.hpp"
#include "emin/io.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <optional>
#include <string>
#include <vector>

using namespace emin;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char *pattern, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

const InvariantResult &find(const std::vector<InvariantResult> &results,
                            const std::string &name) {
  for (const auto &r : results)
    if (r.name == name)
      return r;
  std::fprintf(stderr, "missing invariant %s\n", name.c_str());
  std::exit(2);
}

std::string describe(const InvariantResult &r) {
  return r.name + " " + std::to_string(r.failures) + "/" +
         std::to_string(r.checks) + " failures, max dev " +
         fmt("%.3g", r.max_deviation);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

class Criteria {
public:
  explicit Criteria(std::uint64_t seed) : seed_(seed) {}

  Outcome c1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = verify_oracle(seed_, 200);
    const double secs = seconds_since(t0);
    const auto &r = find(results, "passive_energy_permutation_oracle");
    return {r.failures == 0 && r.checks == 200 && r.max_deviation <= 1e-12 &&
                secs < 10.0,
            describe(r) + ", " + fmt("%.2f s", secs)};
  }

  Outcome c2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto results = verify_routes(seed_, 500);
    const double secs = seconds_since(t0);
    bool ok = secs < 60.0;
    std::string detail;
    for (const char *name : {"routes_pure_direct_closed_mixed",
                             "routes_mixed_direct_closed",
                             "routes_noninteracting_all"}) {
      const auto &r = find(results, name);
      ok = ok && r.checks == 500 && r.failures == 0 && r.max_deviation < 1e-8;
      detail += describe(r) + "; ";
    }
    return {ok, detail + fmt("%.2f s", secs)};
  }

  Outcome c3() {
    const auto &pure = find(theorems(), "noninteracting_emin_positive_pure");
    const auto &mixed = find(theorems(), "noninteracting_emin_positive_mixed");
    return {pure.checks == 1000 && mixed.checks == 1000 && pure.failures == 0 &&
                mixed.failures == 0,
            describe(pure) + "; " + describe(mixed)};
  }

  Outcome c4() {
    const auto &r = find(theorems(), "restricted_local_unitary_invariance");
    return {r.checks == 200 && r.failures == 0, describe(r)};
  }

  Outcome c5() {
    const auto results = verify_states(seed_);
    const auto &major = find(results, "measurement_majorized_by_state");
    const auto &unital = find(results, "measurement_unital_exact");
    return {major.checks == 500 && major.failures == 0 && unital.failures == 0 &&
                unital.max_deviation == 0.0,
            describe(major) + "; " + describe(unital)};
  }

  Outcome c6() {
    const Obs1Report r = example_obs1(0.6);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "xi(rho)=%.15g xi(Pi rho)=%.15g N_xi=%.3g N_geo=%.15g",
                  r.xi_rho, r.xi_measured, r.emin, r.n_geo);
    const bool ok = std::abs(r.xi_rho - 1.0) <= 1e-10 &&
                    std::abs(r.xi_measured - 1.0) <= 1e-10 &&
                    std::abs(r.emin) <= 1e-10 &&
                    std::abs(r.n_geo - 0.4608) <= 1e-12;
    return {ok, buf};
  }

  Outcome c7() {
    const auto &r = find(theorems(), "gibbs_relative_entropy_identity");
    return {r.checks == 100 && r.failures == 0 && r.tolerance <= 1e-8,
            describe(r)};
  }

  Outcome c8() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto &rows = prob_rows();
    const double secs = seconds_since(t0);
    std::vector<double> p;
    for (const auto &r : rows)
      p.push_back(r.probability);
    const bool a = p.front() <= 0.02;
    const bool b = p.back() >= 0.40 && p.back() <= 0.55;
    const TrendVerdict trend = trend_up_to_saturation(p, 0.05);
    const bool c = trend.increasing;
    std::string detail = std::string("(a) ") + (a ? "pass" : "fail") +
                         fmt(" P(g=0.05)=%.4f", p.front()) + "; (b) " +
                         (b ? "pass" : "fail") +
                         fmt(" P(g=3)=%.4f", p.back()) + " vs [0.40, 0.55]; (c) " +
                         (c ? "pass" : "fail") +
                         fmt(" Mann-Kendall p=%.3g", trend.test.p_increasing) +
                         " over " + std::to_string(trend.presaturation_points) +
                         " points; " + fmt("%.2f s", secs);
    return {a && b && c && secs < 300.0, detail};
  }

  Outcome c9() {
    ScatterConfig cfg;
    cfg.samples = 2000;
    cfg.seed = seed_;
    cfg.g = 0.0;
    double min_zero = 0.0;
    for (const auto &r : run_scatter(cfg))
      min_zero = std::min(min_zero, r.n_xi);
    cfg.g = 2.0;
    int neg = 0, pos = 0;
    for (const auto &r : run_scatter(cfg)) {
      neg += r.n_xi < kNegativeThreshold;
      pos += r.n_xi > -kNegativeThreshold;
    }
    const double fneg = neg / 2000.0;
    const double fpos = pos / 2000.0;
    return {min_zero >= -1e-8 && fneg >= 0.01 && fpos >= 0.01,
            fmt("g=0 min n_xi=%.3g; ", min_zero) +
                fmt("g=2 negative fraction %.4f, ", fneg) +
                fmt("positive fraction %.4f", fpos)};
  }

  Outcome c10() {
    const std::string first = prob_to_csv(prob_rows());
    const std::string second = prob_to_csv(run_prob(prob_config()));
    ProbConfig threaded = prob_config();
    threaded.threads = 3;
    const std::string third = prob_to_csv(run_prob(threaded));
    return {first == second && first == third,
            "sha256 " + io::sha256_hex(first).substr(0, 16) +
                (first == second ? " repeat identical" : " repeat differs") +
                (first == third ? ", 3 threads identical" : ", 3 threads differs")};
  }

private:
  ProbConfig prob_config() const {
    ProbConfig cfg;
    cfg.g_min = 0.05;
    cfg.g_max = 3.0;
    cfg.g_steps = 12;
    cfg.samples = 2000;
    cfg.field_dim = 2;
    cfg.ensemble = Ensemble::mixed();
    cfg.seed = seed_;
    cfg.threads = 1;
    return cfg;
  }

  const std::vector<InvariantResult> &theorems() {
    if (!theorems_)
      theorems_ = verify_theorems(seed_);
    return *theorems_;
  }

  const std::vector<ProbRow> &prob_rows() {
    if (!prob_)
      prob_ = run_prob(prob_config());
    return *prob_;
  }

  std::uint64_t seed_;
  std::optional<std::vector<InvariantResult>> theorems_;
  std::optional<std::vector<ProbRow>> prob_;
};

} // namespace

int main(int argc, char **argv) {
  int only = 0;
  std::uint64_t seed = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc)
      only = std::atoi(argv[++i]);
    else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
      seed = std::strtoull(argv[++i], nullptr, 10);
    else {
      std::fprintf(stderr, "usage: %s [--only N] [--seed S]\n", argv[0]);
      return 2;
    }
  }

  Criteria crit(seed);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> table = {
      {"oracle equivalence", [&] { return crit.c1(); }},
      {"route equivalence", [&] { return crit.c2(); }},
      {"non-interacting positivity", [&] { return crit.c3(); }},
      {"restricted invariance", [&] { return crit.c4(); }},
      {"majorization and unitality", [&] { return crit.c5(); }},
      {"two-qubit golden example", [&] { return crit.c6(); }},
      {"Gibbs identity", [&] { return crit.c7(); }},
      {"negative-EMIN probability curve", [&] { return crit.c8(); }},
      {"scatter regimes", [&] { return crit.c9(); }},
      {"determinism", [&] { return crit.c10(); }},
  };

  if (only < 0 || only > int(table.size())) {
    std::fprintf(stderr, "criterion must be 1..%zu\n", table.size());
    return 2;
  }
  bool all = true;
  for (std::size_t k = 0; k < table.size(); ++k) {
    if (only && int(k) + 1 != only)
      continue;
    const Outcome o = table[k].second();
    all = all && o.passed;
    std::printf("criterion %zu [%s]: %s (%s)\n", k + 1, table[k].first.c_str(),
                o.passed ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}

// emin_lab: figure reproduction, verification suites and one-shot
// ergotropy / EMIN evaluation.

#include "emin/errors.hpp"
#include "emin/experiments.hpp"
#include "emin/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

// Exit codes beyond CLI11's own usage errors.
constexpr int kExitCheckFailed = 1;
constexpr int kExitInputError = 2;

struct Common {
  std::uint64_t seed = 0;
  fs::path out = "out";
  bool svg = false;
  int threads = 1;
  int field_dim = 2;
  std::string ensemble = "mixed";
  int rank = 0;
};

emin::Ensemble make_ensemble(const Common &c) {
  return c.ensemble == "pure" ? emin::Ensemble::pure()
                              : emin::Ensemble::mixed(c.rank);
}

std::string command_line(int argc, char **argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i)
      s += ' ';
    s += argv[i];
  }
  return s;
}

std::string g_tag(double g) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", g);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void print_json(const json &j) { std::cout << j.dump(2) << '\n'; }

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"EMIN lab: ergotropy, measurement-induced ergotropy change and "
               "Jaynes-Cummings Monte Carlo experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value configuration file", false);

  Common c;
  const char *seed_env = "EMIN_LAB_SEED";
  app.add_option("--seed", c.seed, "master seed")->envname(seed_env);
  app.add_option("--out", c.out, "output directory");
  app.add_flag("--svg", c.svg, "also write SVG plots");
  app.add_option("--threads", c.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--field-dim", c.field_dim, "field truncation")
      ->check(CLI::Range(2, 64));
  app.add_option("--ensemble", c.ensemble, "state ensemble")
      ->check(CLI::IsMember({"pure", "mixed"}));
  app.add_option("--rank", c.rank, "Ginibre rank for the mixed ensemble (0 = full)")
      ->check(CLI::NonNegativeNumber);

  // fig1-scatter
  auto *scatter = app.add_subcommand("fig1-scatter", "EMIN vs HS norm at fixed g");
  double scatter_g = 0.05;
  std::uint64_t scatter_samples = 10000;
  scatter->add_option("--g", scatter_g, "coupling strength");
  scatter->add_option("--samples", scatter_samples, "number of states")
      ->check(CLI::PositiveNumber);

  // fig1-prob
  auto *prob = app.add_subcommand("fig1-prob", "P[EMIN < 0] across a g grid");
  emin::ProbConfig prob_cfg;
  prob->add_option("--g-min", prob_cfg.g_min);
  prob->add_option("--g-max", prob_cfg.g_max);
  prob->add_option("--g-steps", prob_cfg.g_steps)->check(CLI::PositiveNumber);
  prob->add_option("--samples", prob_cfg.samples)->check(CLI::PositiveNumber);

  // verify
  auto *verify = app.add_subcommand("verify", "run invariant suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "linalg | states | oracle | theorems | routes | all")
      ->check(CLI::IsMember({"linalg", "states", "oracle", "theorems", "routes", "all"}));

  // example-obs1
  auto *obs1 = app.add_subcommand("example-obs1", "two-qubit example with zero EMIN");
  double alpha = 0.6;
  obs1->add_option("--alpha", alpha, "amplitude of |00>");

  // ergotropy
  auto *ergo = app.add_subcommand("ergotropy", "ergotropy of a state file");
  fs::path ergo_rho, ergo_h;
  ergo->add_option("--rho", ergo_rho, "density matrix JSON")->required();
  ergo->add_option("--hamiltonian", ergo_h, "Hamiltonian JSON")->required();

  // emin
  auto *emin_cmd = app.add_subcommand("emin", "EMIN of a bipartite state file");
  fs::path emin_rho, emin_h, emin_ha, emin_hb;
  int dim_a = 0, dim_b = 0;
  std::string basis_kind = "marginal";
  double beta = emin::kDefaultBeta;
  double degeneracy_tol = emin::kDefaultDegeneracyTol;
  emin_cmd->add_option("--rho", emin_rho, "density matrix JSON")->required();
  auto *h_opt = emin_cmd->add_option("--hamiltonian", emin_h, "total Hamiltonian JSON");
  auto *ha_opt = emin_cmd->add_option("--ha", emin_ha, "local Hamiltonian of A");
  auto *hb_opt = emin_cmd->add_option("--hb", emin_hb, "local Hamiltonian of B");
  ha_opt->needs(hb_opt)->excludes(h_opt);
  hb_opt->needs(ha_opt)->excludes(h_opt);
  emin_cmd->add_option("--dim-a", dim_a, "dimension of A")->check(CLI::PositiveNumber);
  emin_cmd->add_option("--dim-b", dim_b, "dimension of B")->check(CLI::PositiveNumber);
  emin_cmd->add_option("--basis", basis_kind, "measurement basis on A")
      ->check(CLI::IsMember({"marginal", "computational"}));
  emin_cmd->add_option("--beta", beta, "inverse temperature for the bounds")
      ->check(CLI::PositiveNumber);
  emin_cmd->add_option("--degeneracy-tol", degeneracy_tol,
                       "gap below which marginal eigenvalues count as degenerate")
      ->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);

  const std::string cmdline = command_line(argc, argv);
  const auto t0 = std::chrono::steady_clock::now();

  try {
    if (*scatter) {
      emin::ScatterConfig cfg;
      cfg.g = scatter_g;
      cfg.samples = scatter_samples;
      cfg.seed = c.seed;
      cfg.field_dim = c.field_dim;
      cfg.ensemble = make_ensemble(c);
      cfg.threads = c.threads;
      const auto records = emin::run_scatter(cfg);
      const emin::ScatterCheck check = emin::check_scatter(cfg.g, records);

      std::uint64_t neg = 0, pos = 0;
      double max_defect = 0.0;
      for (const auto &r : records) {
        neg += r.n_xi < emin::kNegativeThreshold;
        pos += r.n_xi > -emin::kNegativeThreshold;
        max_defect = std::max(max_defect, r.consistency_defect());
      }

      fs::create_directories(c.out);
      emin::io::RunManifest m;
      const fs::path csv = c.out / ("fig1_scatter_g" + g_tag(cfg.g) + ".csv");
      emin::io::write_text(csv, emin::io::records_to_csv(records));
      m.files.push_back(csv);
      if (c.svg) {
        emin::io::Series s{"g = " + g_tag(cfg.g), {}, {}};
        for (const auto &r : records) {
          s.x.push_back(r.n_geo);
          s.y.push_back(r.n_xi);
        }
        const fs::path svg = c.out / ("fig1_scatter_g" + g_tag(cfg.g) + ".svg");
        emin::io::write_text(svg, emin::io::scatter_svg({s}, "EMIN vs HS norm",
                                                        "N(rho)", "N_xi"));
        m.files.push_back(svg);
      }
      json summary = {{"samples", records.size()},
                      {"negative_fraction", double(neg) / records.size()},
                      {"positive_fraction", double(pos) / records.size()},
                      {"min_n_xi", check.min_n_xi},
                      {"max_consistency_defect", max_defect}};
      if (check.applicable)
        summary["check"] = {{"description", check.description},
                            {"threshold", check.threshold},
                            {"passed", check.passed}};
      m.command_line = cmdline;
      m.master_seed = c.seed;
      m.version = kVersion;
      m.parameters = {{"g", cfg.g},           {"samples", cfg.samples},
                      {"field_dim", cfg.field_dim}, {"ensemble", c.ensemble},
                      {"rank", c.rank},       {"threads", cfg.threads}};
      m.extra = summary;
      m.wall_clock_seconds = seconds_since(t0);
      emin::io::write_manifest(c.out / ("fig1_scatter_g" + g_tag(cfg.g) +
                                        ".manifest.json"),
                               m);
      print_json(summary);
      return check.passed ? 0 : kExitCheckFailed;
    }

    if (*prob) {
      prob_cfg.seed = c.seed;
      prob_cfg.field_dim = c.field_dim;
      prob_cfg.ensemble = make_ensemble(c);
      prob_cfg.threads = c.threads;
      const auto rows = emin::run_prob(prob_cfg);
      std::vector<double> p;
      for (const auto &r : rows)
        p.push_back(r.probability);
      const emin::TrendVerdict trend = emin::trend_up_to_saturation(p);

      fs::create_directories(c.out);
      emin::io::RunManifest m;
      const fs::path csv = c.out / "fig1_prob.csv";
      emin::io::write_text(csv, emin::prob_to_csv(rows));
      m.files.push_back(csv);
      if (c.svg) {
        emin::io::Series s{"P[N_xi < 0]", {}, p};
        for (const auto &r : rows)
          s.x.push_back(r.g);
        const fs::path svg = c.out / "fig1_prob.svg";
        emin::io::write_text(svg, emin::io::line_svg({s}, "Probability of negative EMIN",
                                                     "g", "P"));
        m.files.push_back(svg);
      }
      json summary = {
          {"p_first", p.front()},
          {"p_last", p.back()},
          {"trend",
           {{"presaturation_points", trend.presaturation_points},
            {"mann_kendall_s", trend.test.s},
            {"z", trend.test.z},
            {"p_increasing", trend.test.p_increasing},
            {"increasing", trend.increasing}}}};
      m.command_line = cmdline;
      m.master_seed = c.seed;
      m.version = kVersion;
      m.parameters = {{"g_min", prob_cfg.g_min},     {"g_max", prob_cfg.g_max},
                      {"g_steps", prob_cfg.g_steps}, {"samples", prob_cfg.samples},
                      {"field_dim", prob_cfg.field_dim},
                      {"ensemble", c.ensemble},      {"rank", c.rank},
                      {"threads", prob_cfg.threads}};
      m.extra = summary;
      m.wall_clock_seconds = seconds_since(t0);
      emin::io::write_manifest(c.out / "fig1_prob.manifest.json", m);
      print_json(summary);
      return 0;
    }

    if (*verify) {
      const emin::VerifyReport report =
          emin::run_verify(emin::parse_suite(suite), c.seed);
      print_json(report.to_json());
      return report.passed() ? 0 : kExitCheckFailed;
    }

    if (*obs1) {
      const emin::Obs1Report r = emin::example_obs1(alpha);
      print_json(r.to_json());
      return r.passed ? 0 : kExitCheckFailed;
    }

    if (*ergo) {
      const emin::ComplexMatrix rho = emin::io::read_matrix(ergo_rho);
      const emin::ComplexMatrix h = emin::io::read_matrix(ergo_h);
      const emin::ErgotropyReport r = emin::passive(rho, h);
      print_json({{"energy", r.energy},
                  {"passive_energy", r.passive_energy},
                  {"ergotropy", r.ergotropy},
                  {"passive_state", emin::io::matrix_to_json(r.passive_state)}});
      return 0;
    }

    if (*emin_cmd) {
      const emin::ComplexMatrix rho = emin::io::read_matrix(emin_rho);
      std::optional<emin::HamiltonianSpec> h;
      if (!emin_ha.empty()) {
        h = emin::HamiltonianSpec::non_interacting(emin::io::read_matrix(emin_ha),
                                                   emin::io::read_matrix(emin_hb));
        dim_a = h->dim_a();
        dim_b = h->dim_b();
      } else if (!emin_h.empty()) {
        if (dim_a == 0 && dim_b == 0)
          throw emin::DimensionMismatch("--dim-a or --dim-b is required with --hamiltonian");
        const auto n = static_cast<int>(rho.rows());
        if (dim_a == 0)
          dim_a = n / dim_b;
        if (dim_b == 0)
          dim_b = n / dim_a;
        h = emin::HamiltonianSpec::interacting(emin::io::read_matrix(emin_h),
                                               dim_a, dim_b);
      } else {
        throw emin::DomainError("either --hamiltonian or --ha/--hb is required");
      }
      const emin::BipartiteState s =
          emin::BipartiteState::from_density(rho, dim_a, dim_b);
      const emin::MeasurementBasis basis =
          basis_kind == "computational"
              ? emin::MeasurementBasis::computational(dim_a)
              : emin::marginal_basis(s, degeneracy_tol);
      json out = {{"dim_a", dim_a},
                  {"dim_b", dim_b},
                  {"basis", basis_kind},
                  {"degenerate_marginal", basis.degenerate_marginal()},
                  {"ergotropy", emin::ergotropy(s.rho(), *h)},
                  {"emin_direct", emin::emin_direct(s, *h, basis)},
                  {"n_geo", emin::geometric_min(s, basis)}};
      if (basis_kind == "marginal")
        out["emin_mixed_closed"] = emin::emin_mixed_closed(s, *h, basis);
      if (h->is_non_interacting()) {
        out["emin_noninteracting"] = emin::emin_noninteracting(s, *h, basis);
        const emin::EminBounds b = emin::emin_bounds(s, *h, basis, beta);
        out["bounds"] = {{"beta", beta},
                         {"lower", b.lower},
                         {"upper", b.upper},
                         {"beta_emin", b.beta_emin},
                         {"lower_holds", b.lower_holds},
                         {"upper_below", b.upper_below},
                         {"upper_above", b.upper_above}};
      }
      print_json(out);
      return 0;
    }
  } catch (const emin::ParseError &e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const emin::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return 0;
}

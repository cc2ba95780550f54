#include "ddh/cli.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddh/analysis.hpp"
#include "ddh/io.hpp"
#include "ddh/operators.hpp"
#include "ddh/report.hpp"
#include "ddh/rng.hpp"

namespace ddh::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

FieldMode field_mode_from_json(const ordered_json& j) {
  if (!j.contains("mode") || !j["mode"].is_string()) {
    throw IoError("field_mode: missing string field \"mode\"");
  }
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "constant") {
    if (!j.contains("k")) throw IoError("field_mode: constant mode needs \"k\"");
    return ConstantMode{j["k"].get<int>()};
  }
  if (mode == "random") {
    RandomMode r;
    if (j.contains("subdivide_prob")) r.subdivide_prob = j["subdivide_prob"].get<double>();
    if (j.contains("max_depth")) r.max_depth = j["max_depth"].get<int>();
    return r;
  }
  throw IoError("field_mode: mode must be \"constant\" or \"random\"");
}

ordered_json field_mode_to_json(const FieldMode& mode) {
  ordered_json j;
  if (const auto* c = std::get_if<ConstantMode>(&mode)) {
    j["mode"] = "constant";
    j["k"] = c->k;
  } else {
    const auto& r = std::get<RandomMode>(mode);
    j["mode"] = "random";
    j["subdivide_prob"] = r.subdivide_prob;
    j["max_depth"] = r.max_depth;
  }
  return j;
}

std::string field_mode_descriptor(const FieldMode& mode) {
  char buf[64];
  if (const auto* c = std::get_if<ConstantMode>(&mode)) {
    std::snprintf(buf, sizeof buf, "constant:k=%d", c->k);
  } else {
    const auto& r = std::get<RandomMode>(mode);
    std::snprintf(buf, sizeof buf, "random:p=%.3f:d=%d", r.subdivide_prob, r.max_depth);
  }
  return buf;
}

void check_config(const RunConfig& c) {
  if (c.resolutions.empty()) throw std::domain_error("config: resolutions must be non-empty");
  for (int n : c.resolutions) {
    if (n < 0 || n > kMaxResolution) throw std::domain_error("config: resolution outside 0..14");
  }
  if (c.trials < 1) throw std::domain_error("config: trials must be >= 1");
  for (double p : c.p_values) {
    if (!(p > 1.0) || std::isinf(p)) throw std::domain_error("config: p values must be in (1,inf)");
  }
  if (c.jobs < 1) throw std::domain_error("config: jobs must be >= 1");
  if (c.format != "csv" && c.format != "json") {
    throw std::domain_error("config: format must be csv or json");
  }
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("config parse error: ") + e.what());
  }
  RunConfig c;
  if (j.contains("resolutions")) c.resolutions = j["resolutions"].get<std::vector<int>>();
  if (j.contains("p_values")) c.p_values = j["p_values"].get<std::vector<double>>();
  if (j.contains("trials")) c.trials = j["trials"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("field_mode")) c.field_mode = field_mode_from_json(j["field_mode"]);
  if (j.contains("output_path")) c.output_path = j["output_path"].get<std::string>();
  if (j.contains("maxiter")) c.maxiter = j["maxiter"].get<int>();
  if (j.contains("tol")) c.tol = j["tol"].get<double>();
  if (j.contains("budget")) c.budget = j["budget"].get<int>();
  if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
  if (j.contains("format")) c.format = j["format"].get<std::string>();
  return c;
}

std::string config_to_json(const RunConfig& c) {
  ordered_json j;
  j["resolutions"] = c.resolutions;
  j["p_values"] = c.p_values;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["field_mode"] = field_mode_to_json(c.field_mode);
  j["output_path"] = c.output_path;
  j["maxiter"] = c.maxiter;
  j["tol"] = c.tol;
  j["budget"] = c.budget;
  j["jobs"] = c.jobs;
  j["format"] = c.format;
  return j.dump(2) + "\n";
}

namespace {

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    atomic_write_file(out_path, content);
  }
}

// ---- gen-field ----------------------------------------------------------

struct GenFieldArgs {
  int n = 4;
  std::uint64_t seed = 0;
  std::string mode = "random";
  int k = 0;
  double pmax = 0.5;
  int max_depth = kMaxResolution;
  std::string out;
};

int cmd_gen_field(const GenFieldArgs& a) {
  FieldMode mode;
  if (a.mode == "constant") {
    mode = ConstantMode{a.k};
  } else if (a.mode == "random") {
    mode = RandomMode{a.pmax, a.max_depth};
  } else {
    throw std::domain_error("gen-field: mode must be constant or random");
  }
  const DirectionField f = generate_field(a.seed, a.n, mode);
  emit(field_to_json(f) + "\n", a.out);
  return kExitOk;
}

// ---- validate-field ------------------------------------------------------

int cmd_validate_field(const std::string& in) {
  const DirectionField f = read_field_file(in);
  const ValidationResult r = validate_field(f);
  if (r.valid) return kExitOk;
  const auto& [p, q] = *r.witness;
  std::cout << p.cx << ',' << p.cy << ',' << q.cx << ',' << q.cy << '\n';
  return kExitInvalidField;
}

// ---- apply ---------------------------------------------------------------

struct ApplyArgs {
  std::string in;
  std::string field;
  std::string out;
  bool naive = false;
  bool adjoint = false;
};

int cmd_apply(const ApplyArgs& a) {
  const GridFunction f = read_grid_file(a.in);
  const DirectionField v = read_field_file(a.field);
  GridFunction result = a.naive     ? apply_hv_naive(f, v)
                        : a.adjoint ? apply_hv_adjoint(f, v)
                                    : apply_hv(f, v);
  emit(grid_to_json(result) + "\n", a.out);
  return kExitOk;
}

// ---- opnorm ---------------------------------------------------------------

struct OpnormArgs {
  std::string field;
  double p = 2.0;
  std::string method = "auto";
  int maxiter = 500;
  double tol = 1e-8;
  int budget = 4;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

int cmd_opnorm(const OpnormArgs& a) {
  const DirectionField v = read_field_file(a.field);
  NormEstimate est;
  if (a.method == "exact" || (a.method == "auto" && a.p == 2.0 && v.n() <= 3)) {
    if (a.p != 2.0) throw std::domain_error("opnorm: exact method needs p = 2");
    est = opnorm_exact(v);
  } else if (a.method == "power" || (a.method == "auto" && a.p == 2.0)) {
    if (a.p != 2.0) throw std::domain_error("opnorm: power iteration needs p = 2");
    est = opnorm_l2(v, a.maxiter, a.tol, a.seed);
  } else if (a.method == "search" || a.method == "auto") {
    est = opnorm_lp_lower(v, a.p, a.budget, a.seed);
  } else {
    throw std::domain_error("opnorm: method must be auto, exact, power or search");
  }
  ExperimentReport rep;
  rep.seed = a.seed;
  rep.tool_version = kToolVersion;
  rep.rows.push_back({v.n(), "opnorm", est});
  emit(a.format == "json" ? rep.to_json() : rep.to_csv(), a.out);
  return kExitOk;
}

// ---- adversary -------------------------------------------------------------

struct AdversaryArgs {
  int n = 3;
  int budget = 4;
  std::uint64_t seed = 0;
  std::string out;
  std::string field_out;
  std::string maximizer_out;
  std::string format = "csv";
};

int cmd_adversary(const AdversaryArgs& a) {
  const AdversarialResult res = adversarial_selection_norm(a.n, a.budget, a.seed);
  ExperimentReport rep;
  rep.seed = a.seed;
  rep.tool_version = kToolVersion;
  rep.rows.push_back({a.n, "adversary", res.estimate});
  emit(a.format == "json" ? rep.to_json() : rep.to_csv(), a.out);
  if (!a.field_out.empty()) atomic_write_file(a.field_out, field_to_json(res.field) + "\n");
  if (!a.maximizer_out.empty()) {
    atomic_write_file(a.maximizer_out, grid_to_json(res.maximizer) + "\n");
  }
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::string field;
  int trials = 5;
  std::uint64_t seed = 0;
  std::string format = "text";
};

int cmd_verify(const VerifyArgs& a) {
  const DirectionField v = read_field_file(a.field);
  const VerifierReport rep = run_verifiers(v, a.trials, a.seed);
  if (a.format == "json") {
    ordered_json j;
    j["lemma21"] = rep.lemma21_pass ? "pass" : "fail";
    if (rep.lemma21_witness) {
      const auto& w = *rep.lemma21_witness;
      j["lemma21_witness"] = {{"i_level", w.i.level}, {"i_index", w.i.index},
                              {"j_level", w.j.level}, {"j_index", w.j.index},
                              {"x", w.x},             {"y_holds", w.y_holds},
                              {"y_fails", w.y_fails}};
    }
    j["convexity"] = rep.convexity_pass ? "pass" : "fail";
    j["telescoping_max_error"] = rep.telescoping_max_error;
    auto& fs = j["fefferman_stein"] = ordered_json::array();
    for (const auto& row : rep.fefferman_stein) {
      fs.push_back({{"p", row.p},
                    {"maximal_norm", row.maximal_norm},
                    {"plain_norm", row.plain_norm},
                    {"ratio", row.ratio}});
    }
    j["trials"] = rep.trials;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "lemma21: " << (rep.lemma21_pass ? "pass" : "fail") << '\n';
    if (rep.lemma21_witness) {
      const auto& w = *rep.lemma21_witness;
      std::cout << "lemma21_witness: I=(level " << w.i.level << ", index " << w.i.index
                << ") J=(level " << w.j.level << ", index " << w.j.index << ") x=" << w.x
                << " y_holds=" << w.y_holds << " y_fails=" << w.y_fails << '\n';
    }
    std::cout << "convexity: " << (rep.convexity_pass ? "pass" : "fail") << '\n';
    std::cout << "telescoping_max_error: " << format_double(rep.telescoping_max_error) << '\n';
    for (const auto& row : rep.fefferman_stein) {
      std::cout << "fefferman_stein p=" << format_double(row.p)
                << ": maximal_norm=" << format_double(row.maximal_norm)
                << " plain_norm=" << format_double(row.plain_norm)
                << " ratio=" << format_double(row.ratio) << '\n';
    }
  }
  return kExitOk;
}

// ---- haar ------------------------------------------------------------------

struct HaarArgs {
  std::string in;
  std::string out;
};

int cmd_haar(const HaarArgs& a) {
  const GridFunction f = read_grid_file(a.in);
  const HaarCoefficients c = forward_haar_2d(f);
  const GridFunction back = inverse_haar_2d(c);
  double max_err = 0.0;
  for (std::size_t i = 0; i < f.cell_count(); ++i) {
    max_err = std::max(max_err, std::abs(f.values()[i] - back.values()[i]));
  }
  const double norm2 = inner_product(f, f);
  const double parseval_rel =
      norm2 > 0.0 ? std::abs(c.energy() - norm2) / norm2 : std::abs(c.energy());
  std::cout << "roundtrip_max_abs_error=" << format_double(max_err) << '\n';
  std::cout << "parseval_rel_error=" << format_double(parseval_rel) << '\n';
  if (!a.out.empty()) atomic_write_file(a.out, grid_to_json(back) + "\n");
  return kExitOk;
}

// ---- growth ----------------------------------------------------------------

struct GrowthArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::optional<double> p;
  std::optional<int> trials;
  std::optional<int> jobs;
  std::optional<std::string> out;
  std::optional<std::string> format;
};

ExperimentReport run_growth(const RunConfig& config) {
  check_config(config);

  struct Task {
    int n;
    int trial;
  };
  std::vector<Task> tasks;
  for (int n : config.resolutions) {
    for (int t = 0; t < config.trials; ++t) tasks.push_back({n, t});
  }
  std::vector<std::vector<ReportRow>> task_rows(tasks.size());

  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t idx = cursor.fetch_add(1);
      if (idx >= tasks.size()) return;
      const Task& task = tasks[idx];
      const std::uint64_t field_seed =
          derive_seed(config.seed, {static_cast<std::uint64_t>(task.n),
                                    static_cast<std::uint64_t>(task.trial)});
      const DirectionField field = generate_field(field_seed, task.n, config.field_mode);
      char tag[32];
      std::snprintf(tag, sizeof tag, ":t=%03d", task.trial);
      const std::string descriptor = field_mode_descriptor(config.field_mode) + tag;
      for (std::size_t pi = 0; pi < config.p_values.size(); ++pi) {
        const double p = config.p_values[pi];
        const std::uint64_t est_seed = derive_seed(field_seed, {pi});
        const NormEstimate est =
            p == 2.0 ? opnorm_l2(field, config.maxiter, config.tol, est_seed)
                     : opnorm_lp_lower(field, p, config.budget, est_seed);
        task_rows[idx].push_back({task.n, descriptor, est});
      }
    }
  };

  const int jobs = std::min<int>(config.jobs, static_cast<int>(tasks.size()) + 1);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentReport rep;
  rep.seed = config.seed;
  rep.tool_version = kToolVersion;
  for (auto& rows : task_rows) {
    for (auto& row : rows) rep.rows.push_back(std::move(row));
  }
  rep.sort_rows();  // schedule-independent order
  return rep;
}

int cmd_growth(const GrowthArgs& a) {
  RunConfig config;
  if (!a.config_path.empty()) config = config_from_json(read_text_file(a.config_path));
  if (a.seed) config.seed = *a.seed;
  if (a.n) config.resolutions = {*a.n};
  if (a.p) config.p_values = {*a.p};
  if (a.trials) config.trials = *a.trials;
  if (a.jobs) config.jobs = *a.jobs;
  if (a.out) config.output_path = *a.out;
  if (a.format) config.format = *a.format;

  const ExperimentReport rep = run_growth(config);
  emit(config.format == "json" ? rep.to_json() : rep.to_csv(), config.output_path);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Dyadic directional Hilbert transform toolkit"};
  app.require_subcommand(1);

  GenFieldArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-field", "Generate a direction field file");
  gen_cmd->add_option("--n", gen.n, "Resolution exponent")->check(CLI::Range(0, kMaxResolution));
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
  gen_cmd->add_option("--mode", gen.mode, "constant or random")->default_str("random");
  gen_cmd->add_option("--k", gen.k, "Exponent for constant mode");
  gen_cmd->add_option("--pmax", gen.pmax, "Subdivision probability for random mode");
  gen_cmd->add_option("--max-depth", gen.max_depth, "Subdivision depth cap for random mode");
  gen_cmd->add_option("--out", gen.out, "Output path (stdout when absent)");

  std::string validate_in;
  auto* val_cmd = app.add_subcommand(
      "validate-field", "Check the Lipschitz-lacunarity criterion; exit 3 with a witness if it fails");
  val_cmd->add_option("--in", validate_in, "Direction field file")->required();

  ApplyArgs apply;
  auto* apply_cmd = app.add_subcommand("apply", "Apply the directional transform to a grid file");
  apply_cmd->add_option("--in", apply.in, "Input grid file")->required();
  apply_cmd->add_option("--field", apply.field, "Direction field file")->required();
  apply_cmd->add_option("--out", apply.out, "Output path (stdout when absent)");
  apply_cmd->add_flag("--naive", apply.naive, "Use the direct per-rectangle path");
  apply_cmd->add_flag("--adjoint", apply.adjoint, "Apply the adjoint instead");

  OpnormArgs opnorm;
  auto* opnorm_cmd = app.add_subcommand("opnorm", "Estimate the operator norm on a field");
  opnorm_cmd->add_option("--field", opnorm.field, "Direction field file")->required();
  opnorm_cmd->add_option("--p", opnorm.p, "Lebesgue exponent");
  opnorm_cmd->add_option("--method", opnorm.method, "auto, exact, power or search");
  opnorm_cmd->add_option("--maxiter", opnorm.maxiter, "Power iteration cap");
  opnorm_cmd->add_option("--tol", opnorm.tol, "Relative Rayleigh tolerance");
  opnorm_cmd->add_option("--budget", opnorm.budget, "Random starts for the p != 2 search");
  opnorm_cmd->add_option("--seed", opnorm.seed, "64-bit seed");
  opnorm_cmd->add_option("--out", opnorm.out, "Output path (stdout when absent)");
  opnorm_cmd->add_option("--format", opnorm.format, "csv or json");

  AdversaryArgs adversary;
  auto* adv_cmd = app.add_subcommand(
      "adversary", "Search for the worst pointwise scale selection at one resolution");
  adv_cmd->add_option("--n", adversary.n, "Resolution exponent")
      ->check(CLI::Range(1, kMaxResolution));
  adv_cmd->add_option("--budget", adversary.budget, "Random starts");
  adv_cmd->add_option("--seed", adversary.seed, "64-bit seed");
  adv_cmd->add_option("--out", adversary.out, "Estimate output path (stdout when absent)");
  adv_cmd->add_option("--field-out", adversary.field_out, "Write the greedy field here");
  adv_cmd->add_option("--maximizer-out", adversary.maximizer_out, "Write the maximizer here");
  adv_cmd->add_option("--format", adversary.format, "csv or json");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run the structure verifiers on a field");
  verify_cmd->add_option("--field", verify.field, "Direction field file")->required();
  verify_cmd->add_option("--trials", verify.trials, "Random functions per statistic")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "64-bit seed");
  verify_cmd->add_option("--format", verify.format, "text or json");

  HaarArgs haar;
  auto* haar_cmd = app.add_subcommand("haar", "Transform round-trip check on a grid file");
  haar_cmd->add_option("--in", haar.in, "Input grid file")->required();
  haar_cmd->add_option("--out", haar.out, "Write the reconstructed grid here");

  GrowthArgs growth;
  auto* growth_cmd = app.add_subcommand(
      "growth", "Norm estimates across resolutions; flags override config fields");
  growth_cmd->add_option("--config", growth.config_path, "JSON config file");
  growth_cmd->add_option("--seed", growth.seed, "64-bit seed (overrides config)");
  growth_cmd->add_option("--n", growth.n, "Single resolution (overrides config)");
  growth_cmd->add_option("--p", growth.p, "Single exponent (overrides config)");
  growth_cmd->add_option("--trials", growth.trials, "Fields per resolution (overrides config)");
  growth_cmd->add_option("--jobs", growth.jobs, "Worker threads (overrides config)");
  growth_cmd->add_option("--out", growth.out, "Output path (overrides config)");
  growth_cmd->add_option("--format", growth.format, "csv or json (overrides config)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("ddh");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (gen_cmd->parsed()) return cmd_gen_field(gen);
    if (val_cmd->parsed()) return cmd_validate_field(validate_in);
    if (apply_cmd->parsed()) return cmd_apply(apply);
    if (opnorm_cmd->parsed()) return cmd_opnorm(opnorm);
    if (adv_cmd->parsed()) return cmd_adversary(adversary);
    if (verify_cmd->parsed()) return cmd_verify(verify);
    if (haar_cmd->parsed()) return cmd_haar(haar);
    if (growth_cmd->parsed()) return cmd_growth(growth);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, std::cerr);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ddh::cli

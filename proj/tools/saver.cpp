// Command-line driver: binds JSON configs, sample CSVs, and weight files to
// the verification library and emits JSON reports and CSV artifacts.
//
// Exit codes are part of the contract: 0 success (verify: satisfied),
// 1 verify ran but the specification is not satisfied, 2 usage/input error,
// 3 runtime/numeric error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <saver/saver.hpp>

namespace {

using saver::json;

struct RunConfig {
  std::optional<std::string> method;
  std::optional<double> delta;
  std::optional<double> beta;
  std::optional<double> epsilon;
  std::optional<bool> conservative;
  std::optional<json> spec_doc;
  std::optional<std::string> spec_path;
  std::optional<std::string> samples_path;
  std::optional<std::string> samples_kind;  // "g" or "points"
  std::optional<std::string> network_path;
  std::optional<std::string> dist;  // "cauchy" or "gaussian"
  std::optional<double> mean;
  std::optional<double> variance;
  std::optional<std::int64_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  saver::ProjectionOptions projection;
};

// The config file mirrors the report's input half; command-line flags
// override any scalar field afterwards.
void merge_config_file(RunConfig& cfg, const std::string& path) {
  json doc = saver::load_json_file(path);
  if (!doc.is_object()) throw saver::parse_error(path + ": config must be a JSON object");
  auto scalar = [&](const char* key, auto& slot, auto pick) {
    if (doc.contains(key)) slot = pick(doc.at(key), key);
  };
  auto as_string = [&](const json& v, const char* key) {
    if (!v.is_string()) throw saver::parse_error(path + ": \"" + key + "\" must be a string");
    return v.get<std::string>();
  };
  auto as_number = [&](const json& v, const char* key) {
    if (!v.is_number()) throw saver::parse_error(path + ": \"" + key + "\" must be a number");
    return v.get<double>();
  };
  auto as_bool = [&](const json& v, const char* key) {
    if (!v.is_boolean()) throw saver::parse_error(path + ": \"" + key + "\" must be a boolean");
    return v.get<bool>();
  };
  scalar("method", cfg.method, as_string);
  scalar("delta", cfg.delta, as_number);
  scalar("beta", cfg.beta, as_number);
  scalar("epsilon", cfg.epsilon, as_number);
  scalar("conservative", cfg.conservative, as_bool);
  scalar("out", cfg.out, as_string);
  if (doc.contains("seed")) {
    const json& v = doc.at("seed");
    if (!v.is_number_unsigned() && !v.is_number_integer()) {
      throw saver::parse_error(path + ": \"seed\" must be a non-negative integer");
    }
    if (v.is_number_integer() && v.get<std::int64_t>() < 0) {
      throw saver::parse_error(path + ": \"seed\" must be a non-negative integer");
    }
    cfg.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("spec")) {
    const json& v = doc.at("spec");
    if (v.is_string()) {
      cfg.spec_path = v.get<std::string>();
    } else if (v.is_object()) {
      cfg.spec_doc = v;
    } else {
      throw saver::parse_error(path + ": \"spec\" must be an object or a file path");
    }
  }
  if (doc.contains("samples")) {
    const json& v = doc.at("samples");
    if (!v.is_object()) throw saver::parse_error(path + ": \"samples\" must be an object");
    if (v.contains("path")) cfg.samples_path = as_string(v.at("path"), "samples.path");
    if (v.contains("kind")) cfg.samples_kind = as_string(v.at("kind"), "samples.kind");
  }
  if (doc.contains("pipeline")) {
    const json& v = doc.at("pipeline");
    if (!v.is_object()) throw saver::parse_error(path + ": \"pipeline\" must be an object");
    if (v.contains("network")) cfg.network_path = as_string(v.at("network"), "pipeline.network");
    if (v.contains("dist")) cfg.dist = as_string(v.at("dist"), "pipeline.dist");
    if (v.contains("mean")) cfg.mean = as_number(v.at("mean"), "pipeline.mean");
    if (v.contains("variance")) cfg.variance = as_number(v.at("variance"), "pipeline.variance");
    if (v.contains("n")) {
      if (!v.at("n").is_number_integer()) {
        throw saver::parse_error(path + ": \"pipeline.n\" must be an integer");
      }
      cfg.n = v.at("n").get<std::int64_t>();
    }
  }
  if (doc.contains("projection")) {
    const json& v = doc.at("projection");
    if (!v.is_object()) throw saver::parse_error(path + ": \"projection\" must be an object");
    if (v.contains("feas_tol")) cfg.projection.feas_tol = as_number(v.at("feas_tol"), "projection.feas_tol");
    if (v.contains("opt_tol")) cfg.projection.opt_tol = as_number(v.at("opt_tol"), "projection.opt_tol");
    if (v.contains("max_iter")) {
      if (!v.at("max_iter").is_number_integer()) {
        throw saver::parse_error(path + ": \"projection.max_iter\" must be an integer");
      }
      cfg.projection.max_iter = v.at("max_iter").get<std::int64_t>();
    }
  }
}

saver::Method parse_method(const RunConfig& cfg) {
  if (!cfg.method) throw saver::parameter_error("method is required (dkw or scenario)");
  if (*cfg.method == "dkw") return saver::Method::dkw;
  if (*cfg.method == "scenario") return saver::Method::scenario;
  throw saver::parameter_error("unknown method \"" + *cfg.method + "\" (expected dkw or scenario)");
}

double required_param(const std::optional<double>& slot, const char* name) {
  if (!slot) throw saver::parameter_error(std::string(name) + " is required");
  return *slot;
}

saver::SetSpec load_spec(const RunConfig& cfg) {
  if (cfg.spec_doc && cfg.spec_path) {
    throw saver::parameter_error("give the spec inline or as a file, not both");
  }
  if (cfg.spec_doc) return saver::set_from_json(*cfg.spec_doc);
  if (cfg.spec_path) return saver::load_set_file(*cfg.spec_path);
  throw saver::parameter_error("a set spec is required (config \"spec\" or --spec)");
}

saver::VerificationProblem build_problem(const RunConfig& cfg, saver::SetSpec spec) {
  saver::Method method = parse_method(cfg);
  double delta = required_param(cfg.delta, "delta");
  double beta = required_param(cfg.beta, "beta");
  if (method == saver::Method::dkw) {
    double epsilon = required_param(cfg.epsilon, "epsilon");
    bool conservative = cfg.conservative.value_or(false);
    if (conservative && epsilon > delta) {
      throw saver::parameter_error(
          "conservative mode needs epsilon <= delta so that 1 - delta + epsilon <= 1");
    }
    return saver::VerificationProblem::dkw(delta, beta, epsilon, std::move(spec), conservative);
  }
  if (cfg.conservative.value_or(false)) {
    throw saver::parameter_error("conservative mode applies to the dkw method only");
  }
  return saver::VerificationProblem::scenario(delta, beta, std::move(spec));
}

enum class SampleSource { csv_values, csv_points, pipeline };

SampleSource resolve_source(const RunConfig& cfg) {
  bool csv = cfg.samples_path.has_value();
  bool pipe = cfg.network_path.has_value() || cfg.dist.has_value();
  if (csv && pipe) throw saver::parameter_error("give either a samples CSV or a pipeline, not both");
  if (csv) {
    if (!cfg.samples_kind) {
      throw saver::parameter_error("samples kind is required (--samples-kind g|points); it is never inferred");
    }
    if (*cfg.samples_kind == "g") return SampleSource::csv_values;
    if (*cfg.samples_kind == "points") return SampleSource::csv_points;
    throw saver::parameter_error("unknown samples kind \"" + *cfg.samples_kind + "\" (expected g or points)");
  }
  if (pipe) {
    if (!cfg.network_path) throw saver::parameter_error("pipeline needs a network file (--network)");
    if (!cfg.dist) throw saver::parameter_error("pipeline needs a distribution (--dist cauchy|gaussian)");
    return SampleSource::pipeline;
  }
  throw saver::parameter_error("no sample source: give a samples CSV or a pipeline");
}

saver::DistributionSpec build_distribution(const RunConfig& cfg, Eigen::Index dimension) {
  saver::DistributionSpec dist;
  if (*cfg.dist == "cauchy") {
    dist.kind = saver::DistKind::cauchy_standard;
    if (cfg.mean || cfg.variance) {
      throw saver::parameter_error("mean/variance apply to the gaussian distribution only");
    }
  } else if (*cfg.dist == "gaussian") {
    dist.kind = saver::DistKind::gaussian_iid;
    dist.mean = cfg.mean.value_or(0.0);
    dist.variance = cfg.variance.value_or(1.0);
  } else {
    throw saver::parameter_error("unknown distribution \"" + *cfg.dist + "\" (expected cauchy or gaussian)");
  }
  dist.dimension = dimension;
  dist.seed = cfg.seed.value_or(0);
  return dist;
}

// Attach samples from whichever source the config selects. Returns the seed
// when the builtin pipeline produced the samples (for the report).
std::optional<std::uint64_t> attach_from_source(saver::VerificationProblem& problem,
                                                const RunConfig& cfg) {
  switch (resolve_source(cfg)) {
    case SampleSource::csv_values:
      problem.attach_samples(saver::read_values_csv(*cfg.samples_path));
      return std::nullopt;
    case SampleSource::csv_points:
      problem.attach_samples(saver::read_points_csv(*cfg.samples_path), cfg.projection);
      return std::nullopt;
    case SampleSource::pipeline: {
      saver::NetworkSpec net = saver::load_network_file(*cfg.network_path);
      saver::DistributionSpec dist = build_distribution(cfg, net.input_dim());
      std::int64_t n = cfg.n.value_or(problem.samples_required());
      problem.attach_samples(
          saver::pipeline(net, dist, problem.spec(), n, cfg.projection));
      return dist.seed;
    }
  }
  throw saver::state_error("unreachable sample source");
}

json build_report(const saver::VerificationProblem& problem, const saver::Verdict& verdict,
                  const saver::SetModification& mod, std::optional<std::uint64_t> seed,
                  double wall_time_ms) {
  json report;
  report["method"] = saver::to_string(problem.method());
  report["delta"] = problem.delta();
  report["beta"] = problem.beta();
  if (problem.method() == saver::Method::dkw) report["epsilon"] = problem.epsilon();
  report["n_required"] = verdict.n_required;
  report["n_used"] = verdict.n_used;
  report["guarantee_valid"] = verdict.n_used >= verdict.n_required;
  report["estimate"] = verdict.estimate;
  report["satisfied"] = verdict.satisfied;
  report["theta_star"] = mod.theta_star;
  report["direction"] = saver::to_string(mod.direction);
  report["spec"] = saver::set_to_json(problem.spec());
  report["modified_spec"] = saver::set_to_json(mod.modified_spec);
  if (seed) report["seed"] = *seed;
  report["wall_time_ms"] = wall_time_ms;
  return report;
}

void warn_if_insufficient(const saver::Verdict& verdict) {
  if (verdict.n_used < verdict.n_required) {
    std::cerr << "warning: " << verdict.n_used << " samples < " << verdict.n_required
              << " required; the confidence guarantee does not hold (guarantee_valid=false)\n";
  }
}

int cmd_samples_required(const RunConfig& cfg) {
  saver::Method method = parse_method(cfg);
  double beta = required_param(cfg.beta, "beta");
  std::int64_t n = 0;
  std::string summary;
  if (method == saver::Method::dkw) {
    double epsilon = required_param(cfg.epsilon, "epsilon");
    n = saver::dkw_samples({epsilon, beta});
    summary = "dkw: epsilon=" + std::to_string(epsilon) + " beta=" + std::to_string(beta);
  } else {
    double delta = required_param(cfg.delta, "delta");
    n = saver::scenario_samples({delta, beta, 1});
    summary = "scenario: delta=" + std::to_string(delta) + " beta=" + std::to_string(beta);
  }
  std::cout << n << '\n' << summary << " -> " << n << " samples\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, bool exit_on_unsatisfied) {
  auto start = std::chrono::steady_clock::now();
  saver::VerificationProblem problem = build_problem(cfg, load_spec(cfg));
  std::optional<std::uint64_t> seed = attach_from_source(problem, cfg);
  saver::Verdict verdict = problem.check_probability();
  saver::SetModification mod = problem.modify_set();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  warn_if_insufficient(verdict);
  std::string out = cfg.out.value_or("report.json");
  saver::save_json_file(out, build_report(problem, verdict, mod, seed, ms));
  std::cout << "satisfied=" << (verdict.satisfied ? "true" : "false")
            << " estimate=" << verdict.estimate << " theta_star=" << mod.theta_star
            << " direction=" << saver::to_string(mod.direction) << " report=" << out << '\n';
  return (exit_on_unsatisfied && !verdict.satisfied) ? 1 : 0;
}

int cmd_gen_samples(const RunConfig& cfg) {
  saver::VerificationProblem problem = build_problem(cfg, load_spec(cfg));
  if (!cfg.network_path || !cfg.dist) {
    throw saver::parameter_error("gen-samples needs the builtin pipeline (--network and --dist)");
  }
  if (cfg.samples_path) {
    throw saver::parameter_error("gen-samples produces samples; it does not take a samples CSV");
  }
  saver::NetworkSpec net = saver::load_network_file(*cfg.network_path);
  saver::DistributionSpec dist = build_distribution(cfg, net.input_dim());
  std::int64_t n = cfg.n.value_or(problem.samples_required());
  std::vector<double> values = saver::pipeline(net, dist, problem.spec(), n, cfg.projection);

  std::string out = cfg.out.value_or("samples.csv");
  saver::write_values_csv(out, values);

  json meta;
  meta["seed"] = dist.seed;
  meta["n"] = n;
  meta["method"] = saver::to_string(problem.method());
  meta["delta"] = problem.delta();
  meta["beta"] = problem.beta();
  if (problem.method() == saver::Method::dkw) meta["epsilon"] = problem.epsilon();
  meta["network"] = *cfg.network_path;
  meta["dist"] = *cfg.dist;
  if (dist.kind == saver::DistKind::gaussian_iid) {
    meta["mean"] = dist.mean;
    meta["variance"] = dist.variance;
  }
  meta["spec"] = saver::set_to_json(problem.spec());
  saver::save_json_file(out + ".meta.json", meta);

  std::cout << "wrote " << n << " g-values to " << out << '\n';
  return 0;
}

int dispatch(const std::string& command, const RunConfig& cfg) {
  if (command == "samples-required") return cmd_samples_required(cfg);
  if (command == "verify") return cmd_verify(cfg, /*exit_on_unsatisfied=*/true);
  if (command == "modify-set") return cmd_verify(cfg, /*exit_on_unsatisfied=*/false);
  if (command == "gen-samples") return cmd_gen_samples(cfg);
  throw saver::state_error("unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling-based probabilistic verification of set membership"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  std::string spec_path;
  std::string samples_path;
  std::string samples_kind;
  std::string network_path;
  std::string dist_name;
  std::string method_name;
  std::string out_path;
  double delta = 0, beta = 0, epsilon = 0, mean = 0, variance = 0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  bool conservative = false;

  std::vector<CLI::App*> subs;
  for (const char* name : {"samples-required", "verify", "modify-set", "gen-samples"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file; flags override its scalars");
    sub->add_option("--method", method_name, "dkw or scenario");
    sub->add_option("--delta", delta, "probability slack: require P(g <= 0) >= 1 - delta");
    sub->add_option("--beta", beta, "confidence budget");
    sub->add_option("--epsilon", epsilon, "CDF accuracy (dkw only)");
    sub->add_flag("--conservative", conservative, "hold dkw to 1 - delta + epsilon");
    sub->add_option("--spec", spec_path, "set spec JSON file");
    sub->add_option("--samples", samples_path, "sample CSV file");
    sub->add_option("--samples-kind", samples_kind, "g (pre-evaluated) or points");
    sub->add_option("--network", network_path, "weight file for the builtin pipeline");
    sub->add_option("--dist", dist_name, "cauchy or gaussian");
    sub->add_option("--mean", mean, "gaussian mean");
    sub->add_option("--variance", variance, "gaussian variance");
    sub->add_option("--n", n, "sample count override");
    sub->add_option("--seed", seed, "pipeline RNG seed");
    sub->add_option("--out", out_path, "output path (report or CSV)");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    if (sub->count("--config")) merge_config_file(cfg, config_path);
    if (sub->count("--method")) cfg.method = method_name;
    if (sub->count("--delta")) cfg.delta = delta;
    if (sub->count("--beta")) cfg.beta = beta;
    if (sub->count("--epsilon")) cfg.epsilon = epsilon;
    if (sub->count("--conservative")) cfg.conservative = conservative;
    if (sub->count("--spec")) {
      cfg.spec_path = spec_path;
      cfg.spec_doc.reset();
    }
    if (sub->count("--samples")) cfg.samples_path = samples_path;
    if (sub->count("--samples-kind")) cfg.samples_kind = samples_kind;
    if (sub->count("--network")) cfg.network_path = network_path;
    if (sub->count("--dist")) cfg.dist = dist_name;
    if (sub->count("--mean")) cfg.mean = mean;
    if (sub->count("--variance")) cfg.variance = variance;
    if (sub->count("--n")) cfg.n = n;
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--out")) cfg.out = out_path;

    return dispatch(sub->get_name(), cfg);
  } catch (const saver::parameter_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const saver::spec_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const saver::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const saver::parse_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const saver::io_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const saver::state_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 3;
  }
}

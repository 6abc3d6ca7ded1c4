#include "rgperc/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "rgperc/analysis.hpp"
#include "rgperc/configuration.hpp"
#include "rgperc/error.hpp"
#include "rgperc/report.hpp"
#include "rgperc/validation.hpp"

namespace rgperc::cli {
namespace {

using nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string config_path;
  std::optional<std::string> dist;
  std::optional<std::size_t> n;
  std::optional<std::string> kind;
  std::optional<double> p;
  std::optional<std::string> p_grid;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<double> tolerance;
  bool simple_only = false;
  std::optional<std::string> out;
  std::optional<std::uint32_t> max_degree;
  std::optional<unsigned> threads;
};

void add_common_flags(CLI::App& cmd, Flags& flags) {
  cmd.add_option("--config", flags.config_path, "JSON experiment config; flags override it");
  cmd.add_option("--dist", flags.dist, "regular:D | table:i=w,... | powerlaw:GAMMA[:MIN]");
  cmd.add_option("--n", flags.n, "number of vertices");
  cmd.add_option("--kind", flags.kind, "bond or site");
  cmd.add_option("--p", flags.p, "retention probability");
  cmd.add_option("--p-grid", flags.p_grid, "comma list or start:stop:step");
  cmd.add_option("--trials", flags.trials, "trials per probability");
  cmd.add_option("--seed", flags.seed, "top-level seed");
  cmd.add_option("--epsilon", flags.epsilon, "supercriticality threshold on mean |L1|/n");
  cmd.add_option("--tolerance", flags.tolerance, "bisection bracket width");
  cmd.add_flag("--simple-only", flags.simple_only, "condition graphs on simplicity");
  cmd.add_option("--out", flags.out, "output path");
  cmd.add_option("--max-degree", flags.max_degree, "degree cap applied to the distribution");
  cmd.add_option("--threads", flags.threads, "worker threads (0 = all cores)");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto number = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const double value = std::stod(s, &used);
      if (used == s.size()) return value;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("invalid p-grid entry '" + s + "'");
  };
  if (std::count(text.begin(), text.end(), ':') == 2) {
    const auto a = text.find(':');
    const auto b = text.find(':', a + 1);
    const double start = number(text.substr(0, a));
    const double stop = number(text.substr(a + 1, b - a - 1));
    const double step = number(text.substr(b + 1));
    if (!(step > 0.0) || stop < start) throw InvalidArgument("p-grid range must be start:stop:step with step > 0");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
      grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return grid;
  }
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) grid.push_back(number(item));
  return grid;
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

json effective_config(const Flags& flags) {
  json config = default_config();
  if (!flags.config_path.empty()) {
    const auto file = load_config_file(flags.config_path);
    if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (!config.contains(key)) throw InvalidArgument("unknown config field '" + key + "'");
      config[key] = value;
    }
  }
  if (flags.dist) config["dist"] = parse_distribution_flag(*flags.dist);
  if (flags.n) config["n"] = *flags.n;
  if (flags.kind) config["kind"] = *flags.kind;
  if (flags.p) config["p"] = *flags.p;
  if (flags.p_grid) config["p_grid"] = parse_grid(*flags.p_grid);
  if (flags.trials) config["trials"] = *flags.trials;
  if (flags.seed) config["seed"] = *flags.seed;
  if (flags.epsilon) config["epsilon"] = *flags.epsilon;
  if (flags.tolerance) config["tolerance"] = *flags.tolerance;
  if (flags.simple_only) config["simple_only"] = true;
  if (flags.out) config["out"] = *flags.out;
  if (flags.max_degree) config["max_degree"] = *flags.max_degree;
  if (flags.threads) config["threads"] = *flags.threads;
  return config;
}

template <typename T>
T field(const json& config, const char* name) {
  try {
    return config.at(name).get<T>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config field '") + name + "': " + e.what());
  }
}

DegreeDistribution require_distribution(const json& config) {
  if (config.at("dist").is_null()) throw InvalidArgument("a degree distribution (--dist) is required");
  return distribution_from_json(config.at("dist"));
}

TrialOptions trial_options(const json& config) {
  TrialOptions options;
  options.simple_only = field<bool>(config, "simple_only");
  if (!config.at("max_degree").is_null()) options.degree_cap = field<std::uint32_t>(config, "max_degree");
  options.threads = field<unsigned>(config, "threads");
  return options;
}

std::optional<std::string> out_path(const json& config) {
  if (config.at("out").is_null()) return std::nullopt;
  return field<std::string>(config, "out");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  if (!file) throw IoError("failed writing '" + path + "'");
}

json thinned_json(const DegreeDistribution& finite, double p) {
  json bond = json::object();
  const auto thinned = lambda_bond(finite, p);
  for (const auto& [degree, w] : thinned.weights()) bond[std::to_string(degree)] = w;
  const auto site = lambda_site(finite, p);
  json retained = json::object();
  for (const auto& [degree, w] : site.retained) retained[std::to_string(degree)] = w;
  return {{"p", p},
          {"bond", bond},
          {"site", {{"retained", retained}, {"deleted_mass", site.deleted_mass}}},
          {"q_prime_bond", q_prime(finite, p, PercolationKind::bond).closed_form},
          {"q_prime_site", q_prime(finite, p, PercolationKind::site).closed_form}};
}

int cmd_analytic(const json& config, std::ostream& out) {
  const auto dist = require_distribution(config);
  const auto n = field<std::size_t>(config, "n");
  json report = {{"command", "analytic"},
                 {"config_hash", config_hash("analytic", config)},
                 {"seed", config.at("seed")},
                 {"distribution", distribution_to_json(dist)}};

  const auto l = generating_derivatives(dist);  // DivergentMoment -> exit 3
  report["L1"] = l.first;
  report["L2"] = l.second;
  report["Q"] = q_value(dist);
  report["offspring_mean"] = l.first > 0.0 ? json(offspring_mean(dist)) : json(nullptr);

  std::optional<double> p_hat;
  try {
    const auto bond = predict_threshold(dist, PercolationKind::bond);
    const auto site = predict_threshold(dist, PercolationKind::site);
    p_hat = bond.p_hat;
    report["p_hat"] = bond.p_hat;
    report["p_hat_bond"] = bond.p_hat;
    report["p_hat_site"] = site.p_hat;
    report["q_prime_root_bond"] = bond.bisection_root;
    report["q_prime_root_site"] = site.bisection_root;
    report["transition"] = true;
  } catch (const NoTransition& e) {
    report["p_hat"] = nullptr;
    report["transition"] = false;
    report["note"] = e.what();
  }

  std::optional<DegreeDistribution> finite;
  if (const auto* spec = dist.power_law_spec()) {
    const auto threshold = powerlaw_threshold(spec->gamma, spec->min_degree);
    const auto zeta_form = zeta_form_derivatives(*spec);
    const auto cap = config.at("max_degree").is_null() ? default_degree_cap(n)
                                                       : field<std::uint32_t>(config, "max_degree");
    const auto realized = from_distribution(dist, n, cap);
    report["powerlaw"] = {
        {"gamma", threshold.gamma},
        {"zeta_ratio", threshold.zeta_ratio},
        {"truncated_ratio", threshold.truncated_ratio},
        {"gamma0", threshold.gamma0},
        {"valid", threshold.valid},
        {"zeta_form_L1", zeta_form.first},
        {"zeta_form_L2", zeta_form.second},
    };
    std::ostringstream note;
    note << "simulations at n = " << n << " cap the maximum degree at " << cap
         << ", dropping weight " << realized.truncated_mass
         << " of the power-law tail; finite-n experiments do not sample the true tail";
    report["degree_cap"] = {{"n", n},
                            {"cap", cap},
                            {"truncated_mass", realized.truncated_mass},
                            {"note", note.str()}};
    finite = truncate_distribution(dist, cap);
  } else {
    finite = dist;
  }

  double p = p_hat.value_or(0.5);
  if (!config.at("p").is_null()) p = field<double>(config, "p");
  report["thinned"] = thinned_json(*finite, p);

  const auto text = report.dump(2) + "\n";
  out << text;
  if (const auto path = out_path(config)) write_file(*path, text);
  return kOk;
}

int cmd_sweep(const json& config, std::ostream& out) {
  const auto dist = require_distribution(config);
  const auto grid = field<std::vector<double>>(config, "p_grid");
  const auto result = sweep(dist, field<std::size_t>(config, "n"),
                            parse_percolation_kind(field<std::string>(config, "kind")), grid,
                            field<std::size_t>(config, "trials"), field<std::uint64_t>(config, "seed"),
                            trial_options(config));
  const auto hash = config_hash("sweep", config);
  std::ostringstream csv;
  write_sweep_csv(csv, result, hash);
  auto full = to_json(result);
  full["config_hash"] = hash;
  full["config"] = config;
  full["config"].erase("out");
  full["config"].erase("threads");

  if (const auto path = out_path(config)) {
    write_file(*path, csv.str());
    auto json_path = std::filesystem::path(*path).replace_extension(".json").string();
    if (json_path == *path) json_path += ".json";
    write_file(json_path, full.dump(2) + "\n");
  } else {
    out << csv.str();
  }
  return kOk;
}

int cmd_threshold(const json& config, std::ostream& out, std::ostream& err) {
  const auto dist = require_distribution(config);
  const auto kind = parse_percolation_kind(field<std::string>(config, "kind"));
  json report = {{"command", "threshold"},
                 {"config_hash", config_hash("threshold", config)},
                 {"seed", config.at("seed")},
                 {"kind", to_string(kind)},
                 {"n", config.at("n")},
                 {"epsilon", config.at("epsilon")},
                 {"tolerance", config.at("tolerance")},
                 {"trials", config.at("trials")},
                 {"distribution", distribution_to_json(dist)}};
  try {
    report["analytic_p_hat"] = critical_probability(dist, kind);
  } catch (const Error&) {
    report["analytic_p_hat"] = nullptr;
  }
  int code = kOk;
  try {
    const auto estimate = estimate_threshold(
        dist, field<std::size_t>(config, "n"), kind, field<double>(config, "epsilon"),
        field<std::size_t>(config, "trials"), field<double>(config, "tolerance"),
        field<std::uint64_t>(config, "seed"), trial_options(config));
    report.update(to_json(estimate));
  } catch (const BracketError& e) {
    err << "error: " << e.what() << '\n';
    ThresholdEstimate partial;
    partial.trace = e.trace();
    report.update(to_json(partial));
    report["estimate"] = nullptr;
    report["error"] = e.what();
    code = kNoBracket;
  }
  const auto text = report.dump(2) + "\n";
  out << text;
  if (const auto path = out_path(config)) write_file(*path, text);
  return code;
}

int cmd_validate(const json& config, std::ostream& out) {
  ValidationOptions options;
  options.seed = field<std::uint64_t>(config, "seed");
  const auto results = run_validation(options);
  std::ostringstream report;
  report << "# validate seed=" << options.seed << " config_hash=" << config_hash("validate", config) << '\n';
  write_validation_report(report, results);
  out << report.str();
  if (const auto path = out_path(config)) write_file(*path, report.str());
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kFailure;
}

int cmd_generate(const json& config, std::ostream& out, std::ostream& err) {
  const auto dist = require_distribution(config);
  const auto options = trial_options(config);
  const auto realized = from_distribution(dist, field<std::size_t>(config, "n"), options.degree_cap);
  for (const auto& warning : realized.warnings) err << "warning: " << warning << '\n';
  const auto seed = field<std::uint64_t>(config, "seed");
  const auto graph = options.simple_only ? uniform_simple_graph(realized.sequence, seed).graph
                                         : uniform_matching(realized.sequence, seed);
  std::ostringstream text;
  write_edge_list(text, graph);
  if (const auto path = out_path(config)) {
    write_file(*path, text.str());
  } else {
    out << text.str();
  }
  return kOk;
}

}  // namespace

json default_config() {
  return {
      {"dist", nullptr},     {"n", 50000},       {"kind", "bond"},
      {"p", nullptr},        {"p_grid", json::array({0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0})},
      {"trials", 20},        {"seed", 1},        {"epsilon", 0.02},
      {"tolerance", 0.02},   {"simple_only", false},
      {"out", nullptr},      {"max_degree", nullptr},
      {"threads", 0},
  };
}

std::string config_hash(const std::string& command, const json& config) {
  auto relevant = config;
  relevant.erase("out");
  relevant.erase("threads");
  return fnv1a_hex(command + "\n" + relevant.dump());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bond and site percolation on configuration-model random graphs", "rgperc"};
  app.require_subcommand(1);
  Flags flags;
  auto* analytic = app.add_subcommand("analytic", "closed-form thresholds and thinned degree laws");
  auto* sweep_cmd = app.add_subcommand("sweep", "mean |L1|/n over a grid of retention probabilities");
  auto* threshold = app.add_subcommand("threshold", "bisection estimate of the critical probability");
  auto* validate = app.add_subcommand("validate", "exact-enumeration checks of the sampling path");
  auto* generate = app.add_subcommand("generate", "dump one configuration-model graph as an edge list");
  for (auto* cmd : {analytic, sweep_cmd, threshold, validate, generate}) add_common_flags(*cmd, flags);

  std::vector<const char*> argv{"rgperc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }

  try {
    const auto config = effective_config(flags);
    if (analytic->parsed()) return cmd_analytic(config, out);
    if (sweep_cmd->parsed()) return cmd_sweep(config, out);
    if (threshold->parsed()) return cmd_threshold(config, out, err);
    if (validate->parsed()) return cmd_validate(config, out);
    return cmd_generate(config, out, err);
  } catch (const DivergentMoment& e) {
    err << "error: divergent moment: " << e.what() << '\n';
    return kDivergent;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InvalidArgument& e) {
    err << "error: invalid config: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace rgperc::cli

#include "sparsepat/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "sparsepat/bounds.hpp"
#include "sparsepat/decoder.hpp"
#include "sparsepat/errors.hpp"
#include "sparsepat/json_io.hpp"
#include "sparsepat/regimes.hpp"
#include "sparsepat/verify.hpp"

namespace sparsepat::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string boolstr(bool b) { return b ? "true" : "false"; }

// CSV fields never contain quotes from our side; error messages might contain commas.
std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Writes the command's primary output to config.out when given, else to `out`.
void emit(const RunConfig& config, std::ostream& out, const std::string& content) {
  if (config.out.empty()) {
    out << content;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw ValidationError("cannot write output file '" + config.out + "'");
  file << content;
}

std::string error_category(const std::exception& e) {
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const PreconditionError*>(&e)) return "precondition";
  if (dynamic_cast<const ResourceError*>(&e)) return "resource";
  return "validation";
}

SparsityPattern true_support(const RunConfig& c) {
  return c.support.empty() ? leading_pattern(c.k, c.p) : make_pattern_one_based(c.support, c.p);
}

SparseSignal config_signal(const RunConfig& c, const SparsityPattern& t) {
  return c.beta.empty() ? SparseSignal::flat(t, c.beta_min) : SparseSignal(t, c.beta);
}

void check_dims(const RunConfig& c) {
  if (c.n < 1 || c.p < 1) throw ValidationError("need n >= 1 and p >= 1");
  if (c.k < 1 || c.k > c.p) {
    throw ValidationError("need 1 <= k <= p (k = " + std::to_string(c.k) + ", p = " + std::to_string(c.p) + ")");
  }
}

// The alternative F: explicit, or T with its last d indices swapped for the first d outside T.
SparsityPattern alternative_support(const RunConfig& c, const SparsityPattern& t) {
  if (!c.alternative.empty()) return make_pattern_one_based(c.alternative, c.p);
  ExperimentSpec s;
  s.p = c.p;
  s.k = c.k;
  s.d = c.d;
  if (c.d < 0 || c.d > c.k || c.d > c.p - c.k) throw ValidationError("d must satisfy 0 <= d <= min(k, p - k)");
  return resolved_alternative(s, t);
}

struct LoadedInstance {
  ProblemInstance instance;
  bool planted_known;
};

LoadedInstance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("instance file is not valid JSON: " + std::string(e.what()));
  }
  const auto rows = j.at("X").get<std::vector<std::vector<double>>>();
  if (rows.empty() || rows.front().empty()) throw ValidationError("instance X must be a non-empty matrix");
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(rows.front().size());
  Matrix x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != p) {
      throw ValidationError("instance X rows have unequal lengths");
    }
    for (Eigen::Index jcol = 0; jcol < p; ++jcol) x(i, jcol) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(jcol)];
  }
  const auto yv = j.at("y").get<std::vector<double>>();
  const Vector y = Eigen::Map<const Vector>(yv.data(), static_cast<Eigen::Index>(yv.size()));
  const int k = j.at("k").get<int>();
  const bool planted = j.contains("support") && j.contains("beta");
  SparsityPattern t = planted ? pattern_from_json(j["support"], static_cast<int>(p))
                              : leading_pattern(k, static_cast<int>(p));
  if (t.cardinality() != k) throw ValidationError("instance support must have k indices");
  SparseSignal signal = planted ? SparseSignal(t, j["beta"].get<std::vector<double>>()) : SparseSignal::flat(t, 1.0);
  return {ProblemInstance(DesignMatrix(std::move(x)), std::move(signal), y), planted};
}

}  // namespace

int cmd_decode(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<LoadedInstance> loaded;
  if (!c.instance_path.empty()) {
    loaded = load_instance_file(c.instance_path);
  } else {
    check_dims(c);
    const SparsityPattern t = true_support(c);
    loaded = LoadedInstance{make_instance(gaussian_design(c.n, c.p, c.seed), config_signal(c, t), c.seed, c.noiseless),
                            true};
  }
  const ProblemInstance& instance = loaded->instance;
  DecoderOptions options;
  options.max_candidates = c.cap_candidates;
  options.workers = c.workers;
  const DecodeResult result = decode_exhaustive(instance, options);
  if (result.k_exceeds_n) err << "warning: k = " << instance.k() << " exceeds n = " << instance.n() << "\n";

  json record = to_json(result);
  record["n"] = instance.n();
  record["p"] = instance.p();
  record["k"] = instance.k();
  record["seed"] = c.seed;
  record["noiseless"] = c.noiseless;
  record["planted_support"] = loaded->planted_known ? pattern_to_json(instance.support()) : json(nullptr);
  record["recovered"] = loaded->planted_known ? json(result.pattern == instance.support()) : json(nullptr);

  std::ostringstream text;
  text << "support: " << result.pattern.to_string(1) << "\n"
       << "score: " << num(result.score) << "\n"
       << "runner_up_score: " << num(result.runner_up_score) << "\n"
       << "candidates_scored: " << result.candidates_scored << "\n";
  if (loaded->planted_known) text << "planted_support: " << instance.support().to_string(1) << "\n";

  const std::string json_text = record.dump(2) + "\n";
  if (c.format == "json") {
    emit(c, out, json_text);
  } else {
    out << text.str();
    if (!c.out.empty()) emit(c, out, json_text);
  }
  return kSuccess;
}

int cmd_bound(const RunConfig& c, std::ostream& out, std::ostream& err) {
  json record;
  record["kind"] = c.subcommand;
  const std::string& kind = c.subcommand;
  if (kind == "pairwise" || kind == "mgf") {
    check_dims(c);
    const DesignMatrix x = gaussian_design(c.n, c.p, c.seed);
    const SparsityPattern t = true_support(c);
    const SparsityPattern f = alternative_support(c, t);
    const SparseSignal signal = config_signal(c, t);
    record["support"] = pattern_to_json(t);
    record["alternative"] = pattern_to_json(f);
    if (kind == "pairwise") {
      const BoundReport r = pairwise_conditional_bound(x, signal, t, f);
      record.update(to_json(r));
      if (r.probability >= 1.0) {
        err << "warning: vacuous bound (probability clamped to 1)\n";
        record["warning"] = "vacuous";
      }
    } else {
      const double g = projection_energy(x, signal, t, f);
      const int d = pattern_difference(t, f).cardinality();
      record["t"] = c.t;
      record["log_mgf"] = exact_quadratic_log_mgf(x, signal, t, f, c.t);
      record["chain_exponent"] = chernoff_chain_exponent(c.t, g, d);
      record["projection_energy"] = g;
      record["d"] = d;
    }
  } else if (kind == "averaged") {
    const double miss = c.miss_energy ? *c.miss_energy : c.d * c.resolved_beta_min_sq();
    record.update(to_json(averaged_pairwise_bound(c.n, c.k, c.d, miss)));
    record["miss_energy"] = miss;
  } else if (kind == "union-sum") {
    record.update(to_json(union_error_bound_sum(c.n, c.p, c.k, c.resolved_beta_min_sq())));
  } else if (kind == "union-closed") {
    record.update(to_json(union_error_bound_closed_form(c.n, c.p, c.k, c.resolved_beta_min_sq(), c.C,
                                                        parse_condition_variant(c.variant))));
    record["C"] = c.C;
    record["B"] = (c.C - 5.0) / 2.0;
    record["variant"] = c.variant;
  } else {
    throw ValidationError("bound kind must be one of pairwise, averaged, union-sum, union-closed, mgf");
  }
  if (kind != "pairwise" && kind != "mgf") {
    record["n"] = c.n;
    record["k"] = c.k;
    if (kind != "averaged") {
      record["p"] = c.p;
      record["beta_min_sq"] = c.resolved_beta_min_sq();
    }
  }
  if (c.format == "csv") {
    std::string header;
    std::string row;
    for (const auto& [key, value] : record.items()) {
      if (value.is_array() || value.is_object()) continue;
      header += (header.empty() ? "" : ",") + key;
      row += (row.empty() ? "" : ",") + csv_escape(value.is_string() ? value.get<std::string>() : value.dump());
    }
    emit(c, out, header + "\n" + row + "\n");
  } else {
    emit(c, out, record.dump(2) + "\n");
  }
  return kSuccess;
}

int cmd_conditions(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  const ConditionVariant variant = parse_condition_variant(c.variant);
  std::ostringstream csv;
  int ok_rows = 0;
  int total_rows = 0;
  if (!c.regime.empty()) {
    const Regime regime = parse_regime(c.regime);
    RegimeOptions options;
    options.C = c.C;
    options.variant = variant;
    csv << "p,k,beta_min_sq,convexity_ok,sufficient_n,necessary_n,gap_ratio,predictor,sufficient_ratio,"
           "necessary_ratio,error\n";
    const auto rows = regime_table(regime, c.p_grid, options);
    for (const auto& row : rows) {
      const int n_star = static_cast<int>(std::floor(row.sufficient_n)) + 1;
      csv << row.p << ',' << row.k << ',' << num(row.beta_min_sq) << ','
          << boolstr(convexity_condition(n_star, row.k, row.beta_min_sq)) << ',' << num(row.sufficient_n) << ','
          << num(row.necessary_n) << ',' << num(row.sufficient_n / row.necessary_n) << ',' << num(row.predictor) << ','
          << num(row.sufficient_ratio) << ',' << num(row.necessary_ratio) << ",\n";
    }
    emit(c, out, csv.str());
    return kSuccess;
  }

  csv << "p,k,beta_min_sq,convexity_ok,sufficient_n,necessary_n,gap_ratio,error\n";
  const std::vector<int> ps = c.p_values.empty() ? std::vector<int>{c.p} : c.p_values;
  const std::vector<int> ks = c.k_values.empty() ? std::vector<int>{c.k} : c.k_values;
  const std::vector<double> bs =
      c.beta_min_sq_values.empty() ? std::vector<double>{c.resolved_beta_min_sq()} : c.beta_min_sq_values;
  for (int p : ps) {
    for (int k : ks) {
      for (double b : bs) {
        ++total_rows;
        csv << p << ',' << k << ',' << num(b) << ',';
        try {
          const double necessary = necessary_sample_size(p, k, b);
          const double sufficient = sufficient_sample_size(p, k, b, c.C, variant);
          const int n_star = static_cast<int>(std::floor(sufficient)) + 1;
          csv << boolstr(convexity_condition(n_star, k, b)) << ',' << num(sufficient) << ',' << num(necessary) << ','
              << num(sufficient / necessary) << ",\n";
          ++ok_rows;
        } catch (const std::exception& e) {
          csv << ",,,," << csv_escape(error_category(e) + ": " + e.what()) << "\n";
        }
      }
    }
  }
  emit(c, out, csv.str());
  return (ok_rows > 0 || total_rows == 0) ? kSuccess : kUsageError;
}

namespace {

constexpr const char* kMcHeader =
    "target,design_mode,n,p,k,beta_min,d,trials,errors,rate,wilson_low,wilson_high,bound,dominated,error\n";

std::string mc_row(const ExperimentSpec& s, const std::optional<TrialBatchResult>& r, const std::string& error) {
  std::ostringstream row;
  row << to_string(s.target) << ',' << to_string(s.design_mode) << ',' << s.n << ',' << s.p << ',' << s.k << ','
      << (s.beta_values.empty() ? num(s.beta_min) : std::string("explicit")) << ','
      << (s.target == Target::pairwise ? std::to_string(s.d) : std::string()) << ',' << s.trials << ',';
  if (r) {
    row << r->error_count << ',' << num(r->rate) << ',' << num(r->wilson_low) << ',' << num(r->wilson_high) << ','
        << num(r->bound_value) << ',' << boolstr(r->dominated()) << ",\n";
  } else {
    row << ",,,,,," << csv_escape(error) << "\n";
  }
  return row.str();
}

}  // namespace

int cmd_mc(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  RunConfig cfg = c;
  if (c.subcommand == "pairwise") {
    cfg.target = "pairwise";
  } else if (c.subcommand == "recover") {
    cfg.target = "full";
  } else {
    throw ValidationError("mc kind must be pairwise or recover");
  }
  const ExperimentSpec spec = experiment_spec(cfg);
  const TrialBatchResult result = run_experiment(spec, c.workers);
  if (c.format == "json") {
    json record = to_json(result);
    record["spec"] = to_json(spec);
    emit(c, out, record.dump(2) + "\n");
  } else {
    emit(c, out, std::string(kMcHeader) + mc_row(spec, result, {}));
  }
  return kSuccess;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  const ExperimentSpec base = experiment_spec(c);
  const auto rows = sweep(base, sweep_grid(c), c.workers);
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json j;
      j["spec"] = to_json(row.spec);
      j["result"] = row.result ? to_json(*row.result) : json(nullptr);
      j["error"] = row.error;
      arr.push_back(j);
    }
    emit(c, out, arr.dump(2) + "\n");
    return kSuccess;
  }
  std::string csv = kMcHeader;
  for (const auto& row : rows) csv += mc_row(row.spec, row.result, row.error);
  emit(c, out, csv);
  return kSuccess;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& /*err*/) {
  VerifyOptions options;
  options.seed = c.seed == 0 ? options.seed : c.seed;
  options.instances = c.instances;
  options.mgf_samples = c.mgf_samples;
  options.flip_c_sign = c.inject_fault;
  bool all = true;
  std::ostringstream text;
  for (const auto& check : run_verification(options)) {
    all = all && check.passed;
    text << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (c.verbose) {
      text << "  residual=" << num(check.residual) << " tolerance=" << num(check.tolerance) << "  " << check.detail;
    }
    text << "\n";
  }
  emit(c, out, text.str());
  return all ? kSuccess : kCheckFailed;
}

int dispatch(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "decode") return cmd_decode(c, out, err);
    if (c.command == "bound") return cmd_bound(c, out, err);
    if (c.command == "conditions") return cmd_conditions(c, out, err);
    if (c.command == "mc") return cmd_mc(c, out, err);
    if (c.command == "sweep") return cmd_sweep(c, out, err);
    if (c.command == "verify") return cmd_verify(c, out, err);
    err << "error: unknown command '" << c.command << "'\n";
    return kUsageError;
  } catch (const PreconditionError& e) {
    err << "error: hypothesis violated: " << e.hypothesis() << "\n";
  } catch (const ResourceError& e) {
    err << "error: resource: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << "error: domain: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
  }
  return kUsageError;
}

namespace {

// Binds CLI options to RunConfig fields and remembers how to copy each one, so
// values from --config fill in whatever the command line left unset.
class Binder {
public:
  explicit Binder(RunConfig& cfg) : cfg_(cfg) {}

  template <typename T>
  CLI::Option* option(CLI::App* app, const std::string& flags, T RunConfig::*member, const std::string& help) {
    auto* opt = app->add_option(flags, cfg_.*member, help);
    bindings_.push_back({opt, [member](RunConfig& dst, const RunConfig& src) { dst.*member = src.*member; }});
    return opt;
  }

  template <typename T>
  CLI::Option* optional(CLI::App* app, const std::string& flags, std::optional<T> RunConfig::*member, const std::string& help) {
    auto* opt = app->add_option_function<T>(flags, [this, member](const T& v) { cfg_.*member = v; }, help);
    bindings_.push_back({opt, [member](RunConfig& dst, const RunConfig& src) { dst.*member = src.*member; }});
    return opt;
  }

  CLI::Option* flag(CLI::App* app, const std::string& flags, bool RunConfig::*member, const std::string& help) {
    auto* opt = app->add_flag(flags, cfg_.*member, help);
    bindings_.push_back({opt, [member](RunConfig& dst, const RunConfig& src) { dst.*member = src.*member; }});
    return opt;
  }

  // Fields not given on the command line are taken from `file`.
  // A flag may be registered under several subcommands, so "given" is decided by name.
  void merge_unset(const RunConfig& file) {
    std::set<std::string> given;
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) given.insert(b.option->get_name());
    }
    for (const auto& b : bindings_) {
      if (!given.contains(b.option->get_name())) b.copy(cfg_, file);
    }
  }

private:
  struct Binding {
    CLI::Option* option;
    std::function<void(RunConfig&, const RunConfig&)> copy;
  };
  RunConfig& cfg_;
  std::vector<Binding> bindings_;
};

void add_instance_options(Binder& b, CLI::App* app) {
  b.option(app, "--n", &RunConfig::n, "measurement count");
  b.option(app, "--p", &RunConfig::p, "feature count");
  b.option(app, "--k", &RunConfig::k, "support size");
  b.option(app, "--beta-min", &RunConfig::beta_min, "flat signal value on the support");
  b.option(app, "--beta", &RunConfig::beta, "explicit signal values (support order)")->delimiter(',');
  b.option(app, "--support", &RunConfig::support, "true support, 1-based")->delimiter(',');
  b.flag(app, "--noiseless", &RunConfig::noiseless, "drop the noise term");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string config_path;
  std::string emit_config;
  CLI::App app{"Exhaustive sparsity-pattern decoder and error-bound toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Binder b(cfg);

  app.add_option("--config", config_path, "JSON config file; command-line flags take precedence");
  app.add_option("--emit-config", emit_config, "write the merged config as JSON to this path");
  b.option(&app, "--seed", &RunConfig::seed, "master seed");
  b.option(&app, "--workers", &RunConfig::workers, "worker threads (never changes output)");
  b.option(&app, "--out", &RunConfig::out, "output path");
  b.option(&app, "--format", &RunConfig::format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  b.option(&app, "--variant", &RunConfig::variant, "sample-size display: proof, statement or corollary")
      ->check(CLI::IsMember({"proof", "statement", "corollary"}));
  b.option(&app, "--cap-candidates", &RunConfig::cap_candidates, "exhaustive decode budget");

  auto* decode = app.add_subcommand("decode", "run the exhaustive decoder on one instance");
  add_instance_options(b, decode);
  b.option(decode, "--instance", &RunConfig::instance_path, "JSON instance file {X, y, k[, support, beta]}");

  auto* bound = app.add_subcommand("bound", "evaluate an analytic error bound");
  for (const char* kind : {"pairwise", "averaged", "union-sum", "union-closed", "mgf"}) {
    auto* sub = bound->add_subcommand(kind);
    add_instance_options(b, sub);
    b.option(sub, "--alternative", &RunConfig::alternative, "alternative support F, 1-based")->delimiter(',');
    b.option(sub, "--d", &RunConfig::d, "|T - F|");
    b.optional(sub, "--beta-min-sq", &RunConfig::beta_min_sq, "beta_min^2 (default beta_min^2)");
    b.optional(sub, "--miss-energy", &RunConfig::miss_energy, "||beta_{T-F}||^2 (default d * beta_min^2)");
    b.option(sub, "--C", &RunConfig::C, "sample-size constant C");
    b.option(sub, "--t", &RunConfig::t, "MGF argument, |t| < 1/2");
  }
  bound->require_subcommand(1);

  auto* conditions = app.add_subcommand("conditions", "sufficient and necessary sample sizes");
  b.option(conditions, "--p", &RunConfig::p, "feature count");
  b.option(conditions, "--k", &RunConfig::k, "support size");
  b.optional(conditions, "--beta-min-sq", &RunConfig::beta_min_sq, "beta_min^2");
  b.option(conditions, "--p-values", &RunConfig::p_values, "grid of p")->delimiter(',');
  b.option(conditions, "--k-values", &RunConfig::k_values, "grid of k")->delimiter(',');
  b.option(conditions, "--beta-min-sq-values", &RunConfig::beta_min_sq_values, "grid of beta_min^2")->delimiter(',');
  b.option(conditions, "--C", &RunConfig::C, "sample-size constant C");
  b.option(conditions, "--regime", &RunConfig::regime, "scaling regime shorthand");
  b.option(conditions, "--p-grid", &RunConfig::p_grid, "p grid for --regime")->delimiter(',');

  auto* mc = app.add_subcommand("mc", "Monte Carlo error rate against its bound");
  for (const char* kind : {"pairwise", "recover"}) {
    auto* sub = mc->add_subcommand(kind);
    add_instance_options(b, sub);
    b.option(sub, "--alternative", &RunConfig::alternative, "alternative support F, 1-based")->delimiter(',');
    b.option(sub, "--d", &RunConfig::d, "|T - F| when --alternative is not given");
    b.option(sub, "--design", &RunConfig::design_mode, "fixed or fresh")->check(CLI::IsMember({"fixed", "fresh"}));
    b.option(sub, "--trials", &RunConfig::trials, "trial count");
    b.option(sub, "--level", &RunConfig::level, "Wilson interval confidence level");
    b.flag(sub, "--random-pattern", &RunConfig::random_pattern, "draw T uniformly per trial");
  }
  mc->require_subcommand(1);

  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo over a parameter grid");
  add_instance_options(b, sweep_cmd);
  b.option(sweep_cmd, "--target", &RunConfig::target, "pairwise or full")->check(CLI::IsMember({"pairwise", "full"}));
  b.option(sweep_cmd, "--alternative", &RunConfig::alternative, "alternative support F, 1-based")->delimiter(',');
  b.option(sweep_cmd, "--d", &RunConfig::d, "|T - F| when --alternative is not given");
  b.option(sweep_cmd, "--design", &RunConfig::design_mode, "fixed or fresh")->check(CLI::IsMember({"fixed", "fresh"}));
  b.option(sweep_cmd, "--trials", &RunConfig::trials, "trials per point");
  b.option(sweep_cmd, "--level", &RunConfig::level, "Wilson interval confidence level");
  b.flag(sweep_cmd, "--random-pattern", &RunConfig::random_pattern, "draw T uniformly per trial");
  b.option(sweep_cmd, "--vary", &RunConfig::vary, "parameter to sweep: n, p, k or beta_min");
  b.option(sweep_cmd, "--values", &RunConfig::values, "values for --vary")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "run the seeded oracle checks");
  b.flag(verify, "--verbose", &RunConfig::verbose, "print residuals");
  b.flag(verify, "--inject-fault", &RunConfig::inject_fault, "negative control: flip the sign of c");
  b.option(verify, "--instances", &RunConfig::instances, "random instances per check");
  b.option(verify, "--mgf-samples", &RunConfig::mgf_samples, "samples for the MGF checks");

  if (args.empty()) {
    err << "error: empty argument vector\n";
    return kUsageError;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (!config_path.empty()) {
      const RunConfig file = load_run_config(config_path);
      b.merge_unset(file);
      cfg.grid = file.grid;  // explicit sweep points have no flag form
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    if (auto subs = sub->get_subcommands(); !subs.empty()) cfg.subcommand = subs.front()->get_name();
  }

  if (!emit_config.empty()) {
    try {
      save_run_config(cfg, emit_config);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    }
  }
  return dispatch(cfg, out, err);
}

}  // namespace sparsepat::cli

#include "lao/cli/commands.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lao/simulation.hpp"

namespace lao::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kDenseTupleLimit = 10'000;

// Extended reals: infinities travel as strings.
json ext(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  return v;
}

std::string csv_number(double v) {
  if (v == kInfinity) return "inf";
  if (v == -kInfinity) return "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json one_based(const HypothesisTuple& t) {
  json out = json::array();
  for (auto m : t) out.push_back(m + 1);
  return out;
}

std::string tuple_label(const HypothesisTuple& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ";" : "") + std::to_string(t[i] + 1);
  return s;
}

std::string entry_label(const EntrySelection& e) {
  return "E[" + tuple_label(e.truth) + "|" + tuple_label(e.accepted) + "]";
}

bool wants_csv(const CommandOptions& options, bool csv_default) {
  if (options.format == OutputFormat::kDefault) return csv_default;
  return options.format == OutputFormat::kCsv;
}

json violation_json(const Violation& v) {
  json out{{"hypothesis", v.index + 1},
           {"kind", v.kind == BoundKind::kPositivity ? "positivity" : "upper_bound"},
           {"value", ext(v.value)},
           {"bound", ext(v.bound)}};
  if (v.kind == BoundKind::kUpperBound && v.limit != LimitKind::kNone) {
    out["limited_by"] = {{"kind", v.limit == LimitKind::kDivergence ? "divergence" : "reliability"},
                         {"hypothesis", v.limiting_hypothesis + 1}};
  }
  return out;
}

json report_json(const ConditionReport& report, std::size_t object) {
  json bounds = json::array();
  for (double b : report.upper_bounds) bounds.push_back(ext(b));
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back(violation_json(v));
  return {{"object", object + 1}, {"ok", report.ok}, {"upper_bounds", bounds},
          {"violations", violations}};
}

json matrix_json(const ReliabilityMatrix& e) {
  json rows = json::array();
  for (std::size_t m = 0; m < e.size(); ++m) {
    json row = json::array();
    for (std::size_t l = 0; l < e.size(); ++l) row.push_back(ext(e(m, l)));
    rows.push_back(row);
  }
  return rows;
}

const char* family_name(Family f) {
  switch (f) {
    case Family::kA: return "A";
    case Family::kB: return "B";
    case Family::kC: return "C";
  }
  return "?";
}

json family_json(const FamilyLabel& label) {
  json witness = json::array();
  for (const auto& [object, m] : label.witness) {
    witness.push_back({{"object", object + 1}, {"hypothesis", m + 1}});
  }
  return {{"label", family_name(label.label)}, {"witness", witness}};
}

// Givens the per-object tests are actually built from.
std::vector<std::vector<double>> effective_given(const ExperimentConfig& config) {
  auto given = config.given;
  if (config.family_c) {
    for (auto& slice : given) slice[config.family_c->witness] = 0.0;
  }
  return given;
}

std::vector<DecisionRegions> object_regions(const ExperimentConfig& config, const HypothesisSet& h) {
  std::vector<DecisionRegions> regions;
  for (const auto& slice : effective_given(config)) regions.push_back(make_regions(h, {slice}));
  return regions;
}

struct CompoundBuild {
  CompoundReliabilityTensor tensor;
  std::optional<FamilyCFill> fill;
};

CompoundBuild build_tensor(const ExperimentConfig& config, const CommandOptions& options) {
  if (config.objects < 2) throw ConfigError("this command needs objects >= 2");
  const MultiObjectSpec spec = config.multi_spec();
  const BuildOptions build{options.force};
  if (config.family_c) {
    FamilyCFill fill = family_c_fill(spec, config.family_c->witness, config.family_c->givens, build);
    CompoundReliabilityTensor tensor = fill.tensor;
    return {std::move(tensor), std::move(fill)};
  }
  return {build_compound(spec, build), std::nullopt};
}

json entry_json(const CompoundReliabilityTensor& tensor, const HypothesisTuple& truth,
                const HypothesisTuple& accepted) {
  json out{{"true", one_based(truth)}, {"accepted", one_based(accepted)},
           {"value", ext(tensor(truth, accepted))}};
  if (truth == accepted) {
    out["rule"] = "minimum";
    return out;
  }
  json terms = json::array();
  for (const auto& t : tensor.decompose(truth, accepted)) {
    terms.push_back({{"object", t.object + 1},
                     {"true", t.truth + 1},
                     {"accepted", t.accepted + 1},
                     {"value", ext(t.value)},
                     {"kind", t.correct_decision ? "correct_decision" : "error"}});
  }
  out["terms"] = terms;
  return out;
}

std::string finish_json(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

CommandResult cmd_check(const ExperimentConfig& config, const CommandOptions&) {
  const HypothesisSet h = config.hypotheses();
  json doc{{"log_base", config.log_base}};
  bool ok = true;
  json objects = json::array();
  for (std::size_t i = 0; i < config.objects; ++i) {
    const ConditionReport report = check_conditions(h, {config.given[i]});
    ok = ok && report.ok;
    objects.push_back(report_json(report, i));
  }
  doc["ok"] = ok;
  doc["objects"] = objects;
  if (config.objects >= 2) doc["family"] = family_json(classify_family(config.given));
  return {ok ? kExitOk : kExitViolation, finish_json(doc)};
}

CommandResult cmd_matrix(const ExperimentConfig& config, const CommandOptions& options) {
  const HypothesisSet h = config.hypotheses();
  std::vector<ReliabilityMatrix> matrices;
  std::vector<bool> feasible;
  for (const auto& slice : config.given) {
    feasible.push_back(check_conditions(h, {slice}).ok);
    matrices.push_back(build_matrix(h, {slice}, {options.force}));
  }

  if (wants_csv(options, false)) {
    std::string out = "object,true";
    for (std::size_t l = 0; l < h.size(); ++l) out += ",E[." + std::string("|") + std::to_string(l + 1) + "]";
    out += "\n";
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      for (std::size_t m = 0; m < h.size(); ++m) {
        out += std::to_string(i + 1) + "," + std::to_string(m + 1);
        for (std::size_t l = 0; l < h.size(); ++l) out += "," + csv_number(matrices[i](m, l));
        out += "\n";
      }
    }
    return {kExitOk, out};
  }

  json objects = json::array();
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    json given = json::array();
    for (double e : config.given[i]) given.push_back(e);
    objects.push_back({{"object", i + 1},
                       {"given", given},
                       {"feasible", static_cast<bool>(feasible[i])},
                       {"matrix", matrix_json(matrices[i])}});
  }
  json doc{{"log_base", config.log_base}, {"hypotheses", h.size()}, {"forced", options.force},
           {"objects", objects}};
  return {kExitOk, finish_json(doc)};
}

CommandResult cmd_tensor(const ExperimentConfig& config, const CommandOptions& options) {
  const CompoundBuild build = build_tensor(config, options);
  const auto& tensor = build.tensor;
  json doc{{"log_base", config.log_base},
           {"objects", tensor.objects()},
           {"hypotheses", tensor.hypotheses()},
           {"family", family_json(classify_family(config.given))}};

  if (config.dense || config.entries.empty()) {
    const std::size_t count = tensor.tuple_count();
    if (count > kDenseTupleLimit) {
      throw ConfigError("dense export needs M^K <= 10000 (have " + std::to_string(count) +
                        "); list entries instead");
    }
    json tuples = json::array();
    json rows = json::array();
    for (std::size_t a = 0; a < count; ++a) {
      const auto truth = tensor.tuple_at(a);
      tuples.push_back(one_based(truth));
      json row = json::array();
      for (std::size_t b = 0; b < count; ++b) row.push_back(ext(tensor(truth, tensor.tuple_at(b))));
      rows.push_back(row);
    }
    doc["dense"] = {{"tuples", tuples}, {"rows", rows}};
  }
  json entries = json::array();
  for (const auto& e : config.entries) entries.push_back(entry_json(tensor, e.truth, e.accepted));
  doc["entries"] = entries;

  if (build.fill) {
    const auto& fill = *build.fill;
    const std::size_t w = fill.witness;
    const std::size_t last = tensor.hypotheses() - 1;
    const HypothesisTuple at_witness(3, w);
    json witness_entries = json::array();
    for (std::size_t i = 0; i < 3; ++i) {
      HypothesisTuple moved = at_witness;
      moved[i] = last;
      witness_entries.push_back(entry_json(tensor, at_witness, moved));
    }
    witness_entries.push_back(entry_json(tensor, at_witness, HypothesisTuple(3, last)));
    json reconstructed = json::array();
    for (double g : fill.reconstructed_givens()) reconstructed.push_back(g);
    doc["family_c"] = {{"witness", w + 1},
                       {"correct_decision_exponents", fill.correct_exponent},
                       {"reconstructed_givens", reconstructed},
                       {"entries", witness_entries}};
  }
  return {kExitOk, finish_json(doc)};
}

CommandResult cmd_classify(const ExperimentConfig& config, const CommandOptions&,
                           const std::string& data) {
  const HypothesisSet h = config.hypotheses();
  std::vector<std::vector<std::size_t>> sequences;
  std::istringstream lines(data);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream tokens(line);
    std::vector<std::size_t> seq;
    std::string tok;
    while (tokens >> tok) {
      std::size_t symbol = 0;
      const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), symbol);
      if (ec != std::errc() || end != tok.data() + tok.size()) {
        throw ConfigError("data: '" + tok + "' is not a symbol index");
      }
      if (symbol >= h.alphabet_size()) {
        throw ConfigError("data: symbol " + tok + " out of range for alphabet of size " +
                          std::to_string(h.alphabet_size()));
      }
      seq.push_back(symbol);
    }
    if (!seq.empty()) sequences.push_back(std::move(seq));
  }
  if (sequences.empty()) throw ConfigError("data file holds no sequences");
  if (sequences.size() != config.objects) {
    throw ConfigError("data has " + std::to_string(sequences.size()) + " sequences for " +
                      std::to_string(config.objects) + " object(s)");
  }
  for (const auto& s : sequences) {
    if (s.size() != sequences.front().size()) throw ConfigError("data sequences differ in length");
  }

  const auto regions = object_regions(config, h);
  json decision = json::array();
  json objects = json::array();
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const EmpiricalType t = empirical_type(sequences[i], h.alphabet_size());
    const Distribution q = t.distribution();
    const std::size_t d = classify_type(regions[i], q);
    json divergences = json::array();
    for (const auto& g : h.distributions()) divergences.push_back(ext(kl_divergence(q, g, h.log_base())));
    decision.push_back(d + 1);
    objects.push_back({{"object", i + 1},
                       {"decision", d + 1},
                       {"n", t.n},
                       {"type", t.counts},
                       {"divergences", divergences}});
  }
  return {kExitOk, finish_json({{"decision", decision}, {"objects", objects}})};
}

CommandResult cmd_simulate(const ExperimentConfig& config, const CommandOptions& options) {
  if (config.n_grid.size() < 3) throw ConfigError("simulate needs an n_grid of at least three lengths");
  const HypothesisSet h = config.hypotheses();
  const auto regions = object_regions(config, h);

  std::optional<ReliabilityMatrix> matrix;
  std::optional<CompoundBuild> compound;
  if (config.objects == 1) {
    matrix = build_matrix(h, config.single_given(), {options.force});
  } else {
    compound = build_tensor(config, options);
  }

  std::vector<EntrySelection> entries = config.entries;
  if (entries.empty()) {
    if (config.objects != 1) throw ConfigError("simulate needs explicit entries for objects >= 2");
    for (std::size_t m = 0; m < h.size(); ++m) {
      for (std::size_t l = 0; l < h.size(); ++l) {
        if (m != l) entries.push_back({{m}, {l}});
      }
    }
  }
  const std::vector<std::uint64_t> mc_n =
      config.mc_n.empty() ? std::vector<std::uint64_t>{config.n_grid.front()} : config.mc_n;

  json out_entries = json::array();
  for (const auto& e : entries) {
    const bool diagonal = e.truth == e.accepted;
    const Event event = diagonal ? Event::kRejection : Event::kAcceptance;
    const double predicted = matrix ? (*matrix)(e.truth[0], e.accepted[0])
                                    : compound->tensor(e.truth, e.accepted);

    json exact = json::array();
    std::vector<double> logs;
    for (auto n : config.n_grid) {
      const ErrorEstimate est =
          config.objects == 1
              ? exact_error(h, regions[0], e.truth[0], e.accepted[0], n, event)
              : compound_exact_error(h, regions, e.truth, e.accepted, n, event);
      logs.push_back(est.log_alpha);
      exact.push_back({{"n", n}, {"alpha", est.alpha}, {"log_alpha", ext(est.log_alpha)}});
    }

    json item{{"true", one_based(e.truth)},
              {"accepted", one_based(e.accepted)},
              {"event", diagonal ? "rejection" : "acceptance"},
              {"predicted", ext(predicted)},
              {"exact", exact}};
    if (predicted == kInfinity) {
      item["fit"] = nullptr;
      item["ratio"] = nullptr;
    } else {
      const ExponentFit fit = fit_exponent(config.n_grid, logs);
      item["fit"] = {{"slope", ext(fit.slope)},
                     {"r_squared", fit.r_squared},
                     {"endpoint_ratio", ext(fit.endpoint_ratio)},
                     {"infinite", fit.infinite}};
      item["ratio"] = predicted > 0.0 && !fit.infinite ? json(fit.slope / predicted) : json(nullptr);
    }

    if (config.trials > 0) {
      json mc = json::array();
      for (auto n : mc_n) {
        const ErrorEstimate est = monte_carlo_error(h, regions, e.truth, e.accepted, n,
                                                    {config.trials, config.seed, config.threads});
        // Rejection counts every trial that missed the all-correct decision.
        const std::uint64_t hits = diagonal ? config.trials - *est.hits : *est.hits;
        mc.push_back({{"n", n},
                      {"hits", hits},
                      {"alpha", static_cast<double>(hits) / static_cast<double>(config.trials)}});
      }
      item["monte_carlo"] = mc;
    }
    out_entries.push_back(item);
  }

  json doc{{"log_base", config.log_base}, {"entries", out_entries}};
  if (config.trials > 0) {
    doc["trials"] = config.trials;
    doc["seed"] = config.seed;
  }
  return {kExitOk, finish_json(doc)};
}

CommandResult cmd_sweep(const ExperimentConfig& config, const CommandOptions& options) {
  if (!config.sweep) throw ConfigError("sweep command needs a 'sweep' section");
  const auto& sweep = *config.sweep;
  const HypothesisSet h = config.hypotheses();

  std::vector<std::string> columns;
  for (const auto& axis : sweep.axes) {
    columns.push_back("given_o" + std::to_string(axis.object + 1) + "_h" +
                      std::to_string(axis.hypothesis + 1));
  }
  columns.push_back(entry_label(sweep.entry));
  columns.push_back("unclamped");
  columns.push_back("feasible");

  const auto evaluate = [&](const std::vector<std::vector<double>>& given) {
    std::vector<double> row;
    bool feasible = true;
    double value = 0.0;
    if (config.objects == 1) {
      feasible = check_conditions(h, {given[0]}).ok;
      value = build_matrix(h, {given[0]}, {true})(sweep.entry.truth[0], sweep.entry.accepted[0]);
    } else {
      const MultiObjectSpec spec{h, given};
      feasible = check_conditions_multi(spec).ok;
      value = build_compound(spec, {true})(sweep.entry.truth, sweep.entry.accepted);
    }
    return std::array<double, 3>{feasible ? value : 0.0, value, feasible ? 1.0 : 0.0};
  };

  std::vector<std::vector<double>> rows;
  const auto first = sweep.axes[0].values();
  const auto second = sweep.axes.size() > 1 ? sweep.axes[1].values() : std::vector<double>{0.0};
  for (double x : first) {
    for (double y : second) {
      auto given = config.given;
      given[sweep.axes[0].object][sweep.axes[0].hypothesis] = x;
      std::vector<double> row{x};
      if (sweep.axes.size() > 1) {
        given[sweep.axes[1].object][sweep.axes[1].hypothesis] = y;
        row.push_back(y);
      }
      const auto values = evaluate(given);
      row.insert(row.end(), values.begin(), values.end());
      rows.push_back(std::move(row));
    }
  }

  if (wants_csv(options, true)) {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_number(row[c]);
      out += "\n";
    }
    return {kExitOk, out};
  }
  json jrows = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (double v : row) r.push_back(ext(v));
    jrows.push_back(r);
  }
  return {kExitOk, finish_json({{"columns", columns}, {"rows", jrows}})};
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Design and verify LAO tests for multiple hypotheses"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<double> log_base;
  std::string output_path;
  std::string format = "default";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool force = false;
  std::string data_path;

  app.add_option("--config", config_path, "Experiment config (JSON)")->required();
  app.add_option("--log-base", log_base, "Logarithm base for every exponent");
  app.add_option("--output", output_path, "Write the result here instead of stdout");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"default", "json", "csv"}));
  app.add_option("--seed", seed, "Monte Carlo seed");
  app.add_option("--threads", threads, "Monte Carlo worker threads");
  app.add_flag("--force", force, "Build tests even when the existence conditions fail");

  auto* check = app.add_subcommand("check", "Check the existence conditions");
  auto* matrix = app.add_subcommand("matrix", "Reliability matrix of each object's LAO test");
  auto* tensor = app.add_subcommand("tensor", "Compound reliabilities for K objects");
  auto* classify = app.add_subcommand("classify", "Decide hypotheses for observed sequences");
  classify->add_option("--data", data_path, "One whitespace-separated sequence per object and line")
      ->required();
  auto* simulate = app.add_subcommand("simulate", "Exact and Monte Carlo error probabilities");
  auto* sweep = app.add_subcommand("sweep", "Reliability curves and surfaces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    ExperimentConfig config = load_config(config_path);
    if (log_base) config.log_base = *log_base;
    if (seed) config.seed = *seed;
    if (threads) config.threads = *threads;
    config.validate();

    CommandOptions options;
    options.force = force;
    options.format = format == "json" ? OutputFormat::kJson
                     : format == "csv" ? OutputFormat::kCsv
                                       : OutputFormat::kDefault;

    CommandResult result;
    if (check->parsed()) result = cmd_check(config, options);
    if (matrix->parsed()) result = cmd_matrix(config, options);
    if (tensor->parsed()) result = cmd_tensor(config, options);
    if (simulate->parsed()) result = cmd_simulate(config, options);
    if (sweep->parsed()) result = cmd_sweep(config, options);
    if (classify->parsed()) {
      std::ifstream in(data_path);
      if (!in) throw ConfigError("cannot open data file '" + data_path + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      result = cmd_classify(config, options, buffer.str());
    }

    if (output_path.empty()) {
      std::cout << result.output;
    } else {
      std::ofstream out(output_path);
      if (!out) throw ConfigError("cannot write '" + output_path + "'");
      out << result.output;
    }
    return result.exit_code;
  } catch (const ConditionViolation& e) {
    std::cerr << "condition violation: " << e.what() << " (use --force to build anyway)\n";
    return kExitViolation;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace lao::cli

#include "lao/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lao::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) throw ConfigError("unknown field '" + key + "' in " + where);
  }
}

template <typename T>
T read(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing field '" + key + "' in " + where);
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("field '" + key + "' in " + where + ": " + e.what());
  }
}

template <typename T>
T read_or(const json& obj, const std::string& key, T fallback, const std::string& where) {
  return obj.contains(key) ? read<T>(obj, key, where) : fallback;
}

HypothesisTuple read_tuple(const json& obj, const std::string& key, const std::string& where) {
  const auto one_based = read<std::vector<std::size_t>>(obj, key, where);
  HypothesisTuple t;
  for (std::size_t m : one_based) {
    if (m == 0) throw ConfigError("hypothesis indices are 1-based in " + where);
    t.push_back(m - 1);
  }
  return t;
}

EntrySelection read_entry(const json& obj, const std::string& where) {
  reject_unknown(obj, {"true", "accepted"}, where);
  return {read_tuple(obj, "true", where), read_tuple(obj, "accepted", where)};
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  if (!(step > 0.0)) throw ConfigError("sweep step must be positive");
  if (!(stop >= start)) throw ConfigError("sweep stop must not precede start");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    double v = start + step * static_cast<double>(i);
    // Undo accumulated rounding so grid points print as typed (0.103, not
    // 0.10300000000000001) without moving values that are meant to be exact.
    const double snapped = std::nearbyint(v * 1e12) / 1e12;
    if (std::abs(snapped - v) <= 4e-16 * std::max(1.0, std::abs(v))) v = snapped;
    if (v > stop + 1e-9 * step) break;
    out.push_back(v);
  }
  return out;
}

HypothesisSet ExperimentConfig::hypotheses() const {
  std::vector<Distribution> dists;
  try {
    for (const auto& p : distributions) dists.emplace_back(p);
    return HypothesisSet(std::move(dists), log_base);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate() const {
  if (alphabet_size < 2) throw ConfigError("alphabet_size must be at least 2");
  if (distributions.size() < 2) throw ConfigError("need at least two distributions");
  for (const auto& p : distributions) {
    if (p.size() != alphabet_size) {
      throw ConfigError("distribution has " + std::to_string(p.size()) +
                        " entries, alphabet_size is " + std::to_string(alphabet_size));
    }
  }
  const HypothesisSet h = hypotheses();
  if (objects < 1) throw ConfigError("objects must be at least 1");
  if (given.size() != objects) {
    throw ConfigError("expected exponents for " + std::to_string(objects) + " object(s)");
  }
  for (const auto& slice : given) {
    if (slice.size() + 1 != h.size()) {
      throw ConfigError("each object needs " + std::to_string(h.size() - 1) + " given exponents");
    }
    for (double e : slice) {
      if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("given exponents must be >= 0");
    }
  }
  const auto check_tuple = [&](const HypothesisTuple& t) {
    if (t.size() != objects) throw ConfigError("entry tuples need one index per object");
    for (std::size_t m : t) {
      if (m >= h.size()) throw ConfigError("hypothesis index out of range in entry");
    }
  };
  for (const auto& e : entries) {
    check_tuple(e.truth);
    check_tuple(e.accepted);
  }
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw ConfigError("n_grid must be strictly increasing");
  }
  if (!n_grid.empty() && n_grid.front() == 0) throw ConfigError("n_grid entries must be positive");
  if (family_c) {
    if (objects != 3) throw ConfigError("family_c requires exactly three objects");
    if (family_c->witness + 1 >= h.size()) throw ConfigError("family_c witness out of range");
  }
  if (sweep) {
    if (sweep->axes.empty() || sweep->axes.size() > 2) {
      throw ConfigError("sweep needs one or two axes");
    }
    for (const auto& axis : sweep->axes) {
      if (axis.object >= objects) throw ConfigError("sweep axis object out of range");
      if (axis.hypothesis + 1 >= h.size()) throw ConfigError("sweep axis hypothesis out of range");
      (void)axis.values();
    }
    check_tuple(sweep->entry.truth);
    check_tuple(sweep->entry.accepted);
  }
}

ExperimentConfig parse_config(const json& doc) {
  const std::string top = "config";
  reject_unknown(doc,
                 {"alphabet_size", "log_base", "distributions", "objects", "given", "family_c",
                  "entries", "n_grid", "trials", "seed", "threads", "mc_n", "sweep", "dense"},
                 top);
  ExperimentConfig c;
  c.alphabet_size = read<std::size_t>(doc, "alphabet_size", top);
  c.log_base = read_or<double>(doc, "log_base", kDefaultLogBase, top);
  c.distributions = read<std::vector<std::vector<double>>>(doc, "distributions", top);
  c.objects = read_or<std::size_t>(doc, "objects", 1, top);
  if (!doc.contains("given")) throw ConfigError("missing field 'given' in config");
  if (c.objects == 1) {
    c.given = {read<std::vector<double>>(doc, "given", top)};
  } else {
    c.given = read<std::vector<std::vector<double>>>(doc, "given", top);
  }
  if (doc.contains("family_c")) {
    const auto& fc = doc.at("family_c");
    reject_unknown(fc, {"witness", "givens"}, "family_c");
    const auto witness = read<std::size_t>(fc, "witness", "family_c");
    if (witness == 0) throw ConfigError("family_c witness is 1-based");
    c.family_c = FamilyCConfig{witness - 1, read<std::array<double, 3>>(fc, "givens", "family_c")};
  }
  if (doc.contains("entries")) {
    if (!doc.at("entries").is_array()) throw ConfigError("entries must be an array");
    for (const auto& e : doc.at("entries")) c.entries.push_back(read_entry(e, "entries"));
  }
  c.n_grid = read_or<std::vector<std::uint64_t>>(doc, "n_grid", {}, top);
  c.trials = read_or<std::uint64_t>(doc, "trials", 0, top);
  c.seed = read_or<std::uint64_t>(doc, "seed", 0, top);
  c.threads = read_or<unsigned>(doc, "threads", 1, top);
  c.mc_n = read_or<std::vector<std::uint64_t>>(doc, "mc_n", {}, top);
  c.dense = read_or<bool>(doc, "dense", false, top);
  if (doc.contains("sweep")) {
    const auto& s = doc.at("sweep");
    reject_unknown(s, {"axes", "entry"}, "sweep");
    SweepConfig sweep;
    if (!s.contains("axes") || !s.at("axes").is_array()) throw ConfigError("sweep.axes must be an array");
    for (const auto& a : s.at("axes")) {
      reject_unknown(a, {"object", "hypothesis", "start", "stop", "step"}, "sweep axis");
      SweepAxis axis;
      const auto object = read_or<std::size_t>(a, "object", 1, "sweep axis");
      const auto hypothesis = read<std::size_t>(a, "hypothesis", "sweep axis");
      if (object == 0 || hypothesis == 0) throw ConfigError("sweep axis indices are 1-based");
      axis.object = object - 1;
      axis.hypothesis = hypothesis - 1;
      axis.start = read<double>(a, "start", "sweep axis");
      axis.stop = read<double>(a, "stop", "sweep axis");
      axis.step = read<double>(a, "step", "sweep axis");
      sweep.axes.push_back(axis);
    }
    if (!s.contains("entry")) throw ConfigError("missing field 'entry' in sweep");
    sweep.entry = read_entry(s.at("entry"), "sweep.entry");
    c.sweep = std::move(sweep);
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace lao::cli

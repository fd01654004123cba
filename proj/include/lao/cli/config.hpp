#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "lao/errors.hpp"
#include "lao/multi_object.hpp"

namespace lao::cli {

/// Malformed or inconsistent experiment configuration.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A (truth, accepted) pair of hypothesis tuples, 0-based internally and
/// 1-based in JSON.
struct EntrySelection {
  HypothesisTuple truth;
  HypothesisTuple accepted;
};

struct SweepAxis {
  std::size_t object = 0;
  std::size_t hypothesis = 0;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> values() const;
};

struct SweepConfig {
  std::vector<SweepAxis> axes;
  EntrySelection entry;
};

struct FamilyCConfig {
  std::size_t witness = 0;
  std::array<double, 3> givens{};
};

struct ExperimentConfig {
  std::size_t alphabet_size = 0;
  double log_base = kDefaultLogBase;
  std::vector<std::vector<double>> distributions;
  std::size_t objects = 1;
  /// given[object][m]; a single slice when objects == 1.
  std::vector<std::vector<double>> given;
  std::optional<FamilyCConfig> family_c;
  std::vector<EntrySelection> entries;
  std::vector<std::uint64_t> n_grid;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<std::uint64_t> mc_n;
  std::optional<SweepConfig> sweep;
  bool dense = false;

  HypothesisSet hypotheses() const;
  GivenExponents single_given() const { return {given.front()}; }
  MultiObjectSpec multi_spec() const { return {hypotheses(), given}; }
  /// Re-checks every cross-field invariant; throws ConfigError.
  void validate() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

}  // namespace lao::cli

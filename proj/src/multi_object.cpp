#include "lao/multi_object.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lao/errors.hpp"

namespace lao {

CompoundReliabilityTensor::CompoundReliabilityTensor(std::vector<ReliabilityMatrix> per_object)
    : per_object_(std::move(per_object)) {
  if (per_object_.size() < 2) throw InvalidArgument("compound tests need at least two objects");
  const std::size_t m_count = per_object_.front().size();
  for (const auto& e : per_object_) {
    if (e.size() != m_count) throw InvalidArgument("per-object matrices differ in size");
  }
  correct_.assign(per_object_.size(), std::vector<double>(m_count, 0.0));
}

void CompoundReliabilityTensor::validate(const HypothesisTuple& t) const {
  if (t.size() != objects()) {
    throw InvalidArgument("tuple has " + std::to_string(t.size()) + " components, expected " +
                          std::to_string(objects()));
  }
  for (std::size_t m : t) {
    if (m >= hypotheses()) throw InvalidArgument("hypothesis index out of range");
  }
}

double CompoundReliabilityTensor::operator()(const HypothesisTuple& truth,
                                             const HypothesisTuple& accepted) const {
  validate(truth);
  validate(accepted);
  return truth == accepted ? diagonal(truth) : off_diagonal(truth, accepted);
}

double CompoundReliabilityTensor::off_diagonal(const HypothesisTuple& truth,
                                               const HypothesisTuple& accepted) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < objects(); ++i) {
    sum += truth[i] != accepted[i] ? per_object_[i](truth[i], accepted[i]) : correct_[i][truth[i]];
  }
  return sum;
}

// Minimum over accepted != truth of the entry. Each object independently
// contributes either its correct-decision exponent or its cheapest error,
// so the best differing set takes every object whose cheapest error beats
// its correct-decision exponent, or the single cheapest swap if none does.
double CompoundReliabilityTensor::diagonal(const HypothesisTuple& truth) const {
  double base = 0.0;
  double negative_gain = 0.0;
  bool any_negative = false;
  double smallest_gain = kInfinity;
  for (std::size_t i = 0; i < objects(); ++i) {
    const double stay = correct_[i][truth[i]];
    const double gain = per_object_[i].row_min_off_diagonal(truth[i]) - stay;
    base += stay;
    if (gain < 0.0) {
      negative_gain += gain;
      any_negative = true;
    }
    smallest_gain = std::min(smallest_gain, gain);
  }
  return base + (any_negative ? negative_gain : smallest_gain);
}

std::vector<CompoundReliabilityTensor::Term> CompoundReliabilityTensor::decompose(
    const HypothesisTuple& truth, const HypothesisTuple& accepted) const {
  validate(truth);
  validate(accepted);
  if (truth == accepted) throw InvalidArgument("diagonal entries have no additive decomposition");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < objects(); ++i) {
    if (truth[i] != accepted[i]) {
      terms.push_back({i, truth[i], accepted[i], per_object_[i](truth[i], accepted[i]), false});
    } else if (correct_[i][truth[i]] != 0.0) {
      terms.push_back({i, truth[i], accepted[i], correct_[i][truth[i]], true});
    }
  }
  return terms;
}

void CompoundReliabilityTensor::set_correct_decision_exponent(std::size_t object, std::size_t m,
                                                               double value) {
  if (object >= objects() || m >= hypotheses()) throw InvalidArgument("index out of range");
  if (!(value >= 0.0)) throw InvalidArgument("correct-decision exponent must be nonnegative");
  correct_[object][m] = value;
}

double CompoundReliabilityTensor::correct_decision_exponent(std::size_t object,
                                                            std::size_t m) const {
  return correct_.at(object).at(m);
}

std::size_t CompoundReliabilityTensor::tuple_count() const {
  std::size_t count = 1;
  for (std::size_t i = 0; i < objects(); ++i) {
    if (count > std::numeric_limits<std::size_t>::max() / hypotheses()) {
      return std::numeric_limits<std::size_t>::max();
    }
    count *= hypotheses();
  }
  return count;
}

HypothesisTuple CompoundReliabilityTensor::tuple_at(std::size_t index) const {
  HypothesisTuple t(objects());
  for (std::size_t i = objects(); i-- > 0;) {
    t[i] = index % hypotheses();
    index /= hypotheses();
  }
  return t;
}

CompoundReliabilityTensor compose_tensor(std::vector<ReliabilityMatrix> per_object) {
  return CompoundReliabilityTensor(std::move(per_object));
}

namespace {

void validate_spec(const MultiObjectSpec& spec) {
  if (spec.objects() < 2) throw InvalidArgument("compound tests need at least two objects");
  for (const auto& slice : spec.given) {
    if (slice.size() + 1 != spec.hypotheses.size()) {
      throw InvalidArgument("each object needs M-1 prescribed exponents");
    }
  }
}

}  // namespace

MultiConditionReport check_conditions_multi(const MultiObjectSpec& spec) {
  validate_spec(spec);
  MultiConditionReport report;
  for (std::size_t i = 0; i < spec.objects(); ++i) {
    report.per_object.push_back(check_conditions(spec.hypotheses, spec.object_given(i)));
    report.ok = report.ok && report.per_object.back().ok;
  }
  return report;
}

CompoundReliabilityTensor build_compound(const MultiObjectSpec& spec, BuildOptions options) {
  validate_spec(spec);
  std::vector<ReliabilityMatrix> matrices;
  matrices.reserve(spec.objects());
  for (std::size_t i = 0; i < spec.objects(); ++i) {
    matrices.push_back(build_matrix(spec.hypotheses, spec.object_given(i), options));
  }
  return compose_tensor(std::move(matrices));
}

FamilyLabel classify_family(const std::vector<std::vector<double>>& per_object_diags) {
  if (per_object_diags.size() < 2) throw InvalidArgument("families need at least two objects");
  const std::size_t m_count = per_object_diags.front().size();
  FamilyLabel label;
  bool repeated = false;
  for (std::size_t m = 0; m < m_count; ++m) {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < per_object_diags.size(); ++i) {
      if (per_object_diags[i].size() != m_count) throw InvalidArgument("ragged diagonal lists");
      if (per_object_diags[i][m] == 0.0) {
        label.witness.emplace_back(i, m);
        ++zeros;
      }
    }
    repeated = repeated || zeros >= 2;
  }
  label.label = label.witness.empty() ? Family::kA : (repeated ? Family::kB : Family::kC);
  return label;
}

std::array<double, 3> FamilyCFill::reconstructed_givens() const {
  const auto& r = correct_exponent;
  return {r[1] + r[2], r[0] + r[2], r[0] + r[1]};
}

FamilyCFill family_c_fill(const MultiObjectSpec& spec, std::size_t witness,
                          const std::array<double, 3>& compound_givens, BuildOptions options) {
  validate_spec(spec);
  if (spec.objects() != 3) throw InvalidArgument("the family-C fill is defined for three objects");
  if (witness + 1 >= spec.hypotheses.size()) {
    throw InvalidArgument("witness must be below the last hypothesis");
  }
  const bool has_zero = std::any_of(spec.given.begin(), spec.given.end(),
                                    [&](const auto& slice) { return slice[witness] == 0.0; });
  if (!has_zero) throw InvalidArgument("no object has a zero exponent at the witness hypothesis");
  for (double g : compound_givens) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw InvalidArgument("compound givens must be finite and nonnegative");
    }
  }

  const auto& g = compound_givens;
  const std::array<double, 3> r{0.5 * (g[1] + g[2] - g[0]), 0.5 * (g[0] + g[2] - g[1]),
                                0.5 * (g[0] + g[1] - g[2])};
  for (std::size_t i = 0; i < 3; ++i) {
    if (r[i] < 0.0) {
      throw InvalidArgument("compound givens are inconsistent: correct-decision exponent of object " +
                            std::to_string(i + 1) + " would be " + std::to_string(r[i]));
    }
  }

  MultiObjectSpec stein = spec;
  for (auto& slice : stein.given) slice[witness] = 0.0;
  CompoundReliabilityTensor tensor = build_compound(stein, options);
  for (std::size_t i = 0; i < 3; ++i) tensor.set_correct_decision_exponent(i, witness, r[i]);
  return FamilyCFill{r, witness, std::move(tensor)};
}

}  // namespace lao

#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "lao/single_object.hpp"

namespace lao {

/// Hypothesis index per object (0-based).
using HypothesisTuple = std::vector<std::size_t>;

/// K >= 2 independent objects sharing one hypothesis set.
///
/// given[i][m] is the prescribed exponent of the compound decision that
/// keeps every object at m except object i, which is moved to the last
/// hypothesis. For an LAO compound test it coincides with object i's own
/// diagonal exponent E_{m|m}.
struct MultiObjectSpec {
  HypothesisSet hypotheses;
  std::vector<std::vector<double>> given;

  std::size_t objects() const { return given.size(); }
  GivenExponents object_given(std::size_t i) const { return {given.at(i)}; }
};

/// Compound reliabilities for K objects, evaluated on demand from the K
/// per-object matrices (M^K x M^K entries are never stored).
///
/// For tuples that differ on the object set S the entry is
///   sum_{i in S} E_{m_i|l_i}(object i) + sum_{k not in S} R_k(m_k),
/// where R_k(m) is the exponent of object k deciding m correctly when m is
/// true. R is zero for objects with positive diagonal exponents and is only
/// set by the family-C fill; elsewhere the additive part alone is exact for
/// positive per-object matrices and a lower bound otherwise.
class CompoundReliabilityTensor {
 public:
  explicit CompoundReliabilityTensor(std::vector<ReliabilityMatrix> per_object);

  std::size_t objects() const { return per_object_.size(); }
  std::size_t hypotheses() const { return per_object_.front().size(); }
  const ReliabilityMatrix& object_matrix(std::size_t i) const { return per_object_[i]; }

  /// E_{truth|accepted}; the all-equal case is the minimum over every
  /// accepted tuple that differs from truth.
  double operator()(const HypothesisTuple& truth, const HypothesisTuple& accepted) const;

  struct Term {
    std::size_t object;
    std::size_t truth;
    std::size_t accepted;
    double value;
    /// Term is a correct-decision exponent R_k rather than an error exponent.
    bool correct_decision;
  };
  /// Summands of a non-diagonal entry, in object order.
  std::vector<Term> decompose(const HypothesisTuple& truth, const HypothesisTuple& accepted) const;

  void set_correct_decision_exponent(std::size_t object, std::size_t m, double value);
  double correct_decision_exponent(std::size_t object, std::size_t m) const;

  /// Number of hypothesis tuples, M^K (saturating).
  std::size_t tuple_count() const;
  HypothesisTuple tuple_at(std::size_t index) const;

 private:
  void validate(const HypothesisTuple& t) const;
  double off_diagonal(const HypothesisTuple& truth, const HypothesisTuple& accepted) const;
  double diagonal(const HypothesisTuple& truth) const;

  std::vector<ReliabilityMatrix> per_object_;
  std::vector<std::vector<double>> correct_;  // [object][m]
};

/// Combines K per-object reliability matrices into the compound tensor.
CompoundReliabilityTensor compose_tensor(std::vector<ReliabilityMatrix> per_object);

struct MultiConditionReport {
  bool ok = true;
  std::vector<ConditionReport> per_object;
};

/// Per-object existence conditions on each object's slice of the givens;
/// the compound test is feasible iff every object's slice is.
MultiConditionReport check_conditions_multi(const MultiObjectSpec& spec);

/// Builds every object's LAO matrix from its slice and composes them.
/// Zero givens are allowed (families B and C); other violations throw
/// ConditionViolation unless options.force is set.
CompoundReliabilityTensor build_compound(const MultiObjectSpec& spec, BuildOptions options = {});

enum class Family { kA, kB, kC };

struct FamilyLabel {
  Family label = Family::kA;
  /// (object, hypothesis) pairs with a zero diagonal exponent.
  std::vector<std::pair<std::size_t, std::size_t>> witness;
};

/// A: every per-object diagonal exponent positive. B: some hypothesis has a
/// zero exponent in two or more objects. C: zeros exist and each affected
/// hypothesis has exactly one zero object.
FamilyLabel classify_family(const std::vector<std::vector<double>>& per_object_diags);

struct FamilyCFill {
  /// Correct-decision exponents of objects 1..3 at the witness hypothesis.
  std::array<double, 3> correct_exponent{};
  std::size_t witness = 0;
  CompoundReliabilityTensor tensor;

  /// The three compound givens at the witness, rebuilt as pairwise sums of
  /// the correct-decision exponents.
  std::array<double, 3> reconstructed_givens() const;
};

/// Three-object fill for a test with a vanishing diagonal exponent at
/// hypothesis `witness`.
///
/// Every object is given the Stein construction at the witness (its slice
/// entry there is replaced by 0), so E_{w|M} vanishes per object and the
/// compound entry (w,w,w | M,M,M) is exactly zero. compound_givens[i] is
/// the exponent of moving object i to the last hypothesis while the other
/// two stay at the witness; it equals the sum of the other two objects'
/// correct-decision exponents, which inverts to R_1 = (g_2 + g_3 - g_1) / 2
/// and its cyclic analogs. Throws InvalidArgument when K != 3, no object has
/// a zero at the witness, or a recovered exponent is negative.
FamilyCFill family_c_fill(const MultiObjectSpec& spec, std::size_t witness,
                          const std::array<double, 3>& compound_givens,
                          BuildOptions options = {});

}  // namespace lao

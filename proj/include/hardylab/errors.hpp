#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hardylab {

/// A parameter outside the range an operation is defined on.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A generator produced a weight λ_n ≤ 0. `index()` is 1-based.
class NonPositiveWeight : public InvalidArgument {
 public:
  NonPositiveWeight(std::size_t index, double value);
  [[nodiscard]] std::size_t index() const { return index_; }
  [[nodiscard]] double value() const { return value_; }

 private:
  std::size_t index_;
  double value_;
};

/// The prefix-sum hypotheses of the majorization lemma do not hold, so its
/// conclusion says nothing. Distinct from the conclusion failing.
class PrefixHypothesisError : public std::domain_error {
 public:
  PrefixHypothesisError(std::size_t index, const std::string& what);
  [[nodiscard]] std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace hardylab

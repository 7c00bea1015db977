#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace choice_attach {

/// How the r preferential draws of one step relate to each other.
enum class SamplingMode {
  WithReplacement,  ///< r independent draws; a vertex may occur several times
  AllDistinct,      ///< i.i.d. tuples rejected until all vertex ids differ
};

std::string_view to_string(SamplingMode mode);
SamplingMode parse_sampling_mode(std::string_view text);

/// Largest r the library accepts. Exact work is arbitrary precision; the
/// floating-point kernels lose relative accuracy beyond this.
inline constexpr int kMaxSampleCount = 64;

/// One model instance: sample r vertices preferentially, attach to the one
/// of rank s by degree (s = 1 is the largest degree).
struct ModelParams {
  int r = 1;
  int s = 1;
  SamplingMode sampling = SamplingMode::WithReplacement;

  /// Throws ConfigError unless 1 <= s <= r <= kMaxSampleCount.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

ModelParams make_params(int r, int s,
                        SamplingMode sampling = SamplingMode::WithReplacement);

// Error hierarchy. The CLI maps each to an exit code.

/// Invalid parameters or arguments.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A search (threshold, cutoff) exhausted its range.
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver hit its iteration cap.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A memory or size cap would be exceeded.
class ResourceCap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace choice_attach

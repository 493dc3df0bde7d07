#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

namespace fcwsim {

// Per-step agreement between the warning computed from exact LV data (truth)
// and the warning computed from the estimated LV state.
struct ConfusionCounts {
  std::uint64_t ch = 0;  // hazard, warned
  std::uint64_t cs = 0;  // safe, silent
  std::uint64_t is = 0;  // hazard, silent (missed)
  std::uint64_t ih = 0;  // safe, warned (false alarm)

  std::uint64_t total() const { return ch + cs + is + ih; }
  ConfusionCounts& operator+=(const ConfusionCounts& o);

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts classify_step(bool truth_warn, bool est_warn, ConfusionCounts acc);

// Ch / (Is + Ch); empty when the scenario had no hazard steps.
std::optional<double> true_positive(const ConfusionCounts& c);

// (Ch + Cs) / total; empty on zero total.
std::optional<double> accuracy(const ConfusionCounts& c);

struct AggregateScores {
  std::optional<double> mean_tp;
  std::optional<double> mean_accuracy;
  std::size_t n = 0;
  std::size_t n_undefined_tp = 0;
  std::size_t n_undefined_accuracy = 0;
};

// Ratios per entry first, undefined ones excluded, then arithmetic means.
// Throws UsageError on empty input.
AggregateScores aggregate(std::span<const ConfusionCounts> per_scenario);

}  // namespace fcwsim

#include "fcwsim/metrics.hpp"

#include "fcwsim/errors.hpp"

namespace fcwsim {

ConfusionCounts& ConfusionCounts::operator+=(const ConfusionCounts& o) {
  ch += o.ch;
  cs += o.cs;
  is += o.is;
  ih += o.ih;
  return *this;
}

ConfusionCounts classify_step(bool truth_warn, bool est_warn, ConfusionCounts acc) {
  if (truth_warn && est_warn) {
    ++acc.ch;
  } else if (!truth_warn && !est_warn) {
    ++acc.cs;
  } else if (truth_warn) {
    ++acc.is;
  } else {
    ++acc.ih;
  }
  return acc;
}

std::optional<double> true_positive(const ConfusionCounts& c) {
  const std::uint64_t hazards = c.is + c.ch;
  if (hazards == 0) return std::nullopt;
  return static_cast<double>(c.ch) / static_cast<double>(hazards);
}

std::optional<double> accuracy(const ConfusionCounts& c) {
  const std::uint64_t total = c.total();
  if (total == 0) return std::nullopt;
  return static_cast<double>(c.ch + c.cs) / static_cast<double>(total);
}

AggregateScores aggregate(std::span<const ConfusionCounts> per_scenario) {
  if (per_scenario.empty()) throw UsageError("aggregate: no scenarios");

  AggregateScores out;
  out.n = per_scenario.size();
  double tp_sum = 0.0;
  double acc_sum = 0.0;
  std::size_t tp_n = 0;
  std::size_t acc_n = 0;
  for (const auto& c : per_scenario) {
    if (const auto tp = true_positive(c)) {
      tp_sum += *tp;
      ++tp_n;
    } else {
      ++out.n_undefined_tp;
    }
    if (const auto acc = accuracy(c)) {
      acc_sum += *acc;
      ++acc_n;
    } else {
      ++out.n_undefined_accuracy;
    }
  }
  if (tp_n > 0) out.mean_tp = tp_sum / static_cast<double>(tp_n);
  if (acc_n > 0) out.mean_accuracy = acc_sum / static_cast<double>(acc_n);
  return out;
}

}  // namespace fcwsim

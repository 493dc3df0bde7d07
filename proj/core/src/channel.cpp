#include "fcwsim/channel.hpp"

#include <cmath>

#include "fcwsim/errors.hpp"
#include "fcwsim/rng.hpp"

namespace fcwsim {

namespace {

Bsm make_bsm(std::size_t i, const TimedState& ts) {
  return Bsm{static_cast<std::uint64_t>(i), ts.t, ts.state};
}

}  // namespace

void ChannelConfig::validate() const {
  if (!(per >= 0.0 && per <= 1.0)) {
    throw ConfigError("packet error ratio must lie in [0, 1], got " + std::to_string(per));
  }
}

std::vector<ReceivedSlot> transmit(std::span<const TimedState> states,
                                   const ChannelConfig& cfg) {
  cfg.validate();
  if (states.empty()) throw UsageError("transmit: empty state sequence");

  const CounterRng rng(cfg.seed);
  std::vector<ReceivedSlot> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    ReceivedSlot slot{i, std::nullopt};
    const bool dropped = i > 0 && rng.uniform_at(i) < cfg.per;
    if (!dropped) slot.payload = make_bsm(i, states[i]);
    out.push_back(std::move(slot));
  }
  return out;
}

std::vector<ReceivedSlot> apply_mask(std::span<const TimedState> states,
                                     const std::vector<bool>& mask) {
  if (mask.size() != states.size()) {
    throw UsageError("apply_mask: mask length " + std::to_string(mask.size()) +
                     " does not match " + std::to_string(states.size()) + " states");
  }
  if (!mask.empty() && !mask.front()) {
    throw UsageError("apply_mask: slot 0 must be delivered");
  }
  std::vector<ReceivedSlot> out;
  out.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    ReceivedSlot slot{i, std::nullopt};
    if (mask[i]) slot.payload = make_bsm(i, states[i]);
    out.push_back(std::move(slot));
  }
  return out;
}

std::string mask_string(std::span<const ReceivedSlot> slots) {
  std::string s;
  s.reserve(slots.size());
  for (const auto& slot : slots) s.push_back(slot.delivered() ? '1' : '0');
  return s;
}

}  // namespace fcwsim

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcwsim/kinematics.hpp"

namespace fcwsim {

// Basic safety message broadcast by the leading vehicle.
struct Bsm {
  std::uint64_t seq = 0;
  double t = 0.0;
  VehicleState state;

  friend bool operator==(const Bsm&, const Bsm&) = default;
};

struct ChannelConfig {
  double per = 0.0;  // packet error ratio in [0, 1]
  std::uint64_t seed = 0;

  void validate() const;
};

// What the receiver saw in one transmission slot; empty payload means dropped.
struct ReceivedSlot {
  std::size_t slot = 0;
  std::optional<Bsm> payload;

  bool delivered() const { return payload.has_value(); }

  friend bool operator==(const ReceivedSlot&, const ReceivedSlot&) = default;
};

// i.i.d. Bernoulli loss: slot i >= 1 is dropped when the i-th uniform of the
// stream keyed by cfg.seed falls below cfg.per. Slot 0 is always delivered so
// every estimator has an initialization sample.
std::vector<ReceivedSlot> transmit(std::span<const TimedState> states,
                                   const ChannelConfig& cfg);

// Deterministic loss pattern; mask[i] == true means delivered.
std::vector<ReceivedSlot> apply_mask(std::span<const TimedState> states,
                                     const std::vector<bool>& mask);

// One '1' (delivered) or '0' (dropped) per slot.
std::string mask_string(std::span<const ReceivedSlot> slots);

}  // namespace fcwsim

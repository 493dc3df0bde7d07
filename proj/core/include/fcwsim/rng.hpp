#pragma once

#include <cstdint>
#include <string_view>

namespace fcwsim {

// Counter-based generator, stream format "ctr-splitmix64/v1".
//
// The n-th draw of a stream is mix64(key + (n + 1) * kGamma): a pure function
// of (key, n), so any draw can be recomputed without replaying the stream and
// independent streams are obtained by deriving new keys. Changing anything in
// this file changes every loss mask and generated fleet; bump the version tag
// if that ever happens.
class CounterRng {
 public:
  static constexpr std::string_view kVersion = "ctr-splitmix64/v1";
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }

  // Raw 64-bit value at a counter position.
  std::uint64_t bits_at(std::uint64_t counter) const;
  // Uniform double in [0, 1) with 53 bits of resolution.
  double uniform_at(std::uint64_t counter) const;

  // Sequential interface over the same counter space.
  std::uint64_t next_bits() { return bits_at(counter_++); }
  double next_uniform() { return uniform_at(counter_++); }
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_uniform(); }

  // Child stream whose key depends on this key and the tag only.
  CounterRng split(std::uint64_t tag) const;

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

// 64-bit FNV-1a.
std::uint64_t hash_string(std::string_view s);

// Channel seed for one sweep replicate. Adding scenarios, PER values or seeds
// never changes the seed of an existing (scenario, per_index, seed_index).
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view scenario_id,
                          std::uint64_t per_index, std::uint64_t seed_index);

}  // namespace fcwsim

#include "fcwsim/rng.hpp"

namespace fcwsim {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t CounterRng::bits_at(std::uint64_t counter) const {
  return mix64(key_ + (counter + 1) * kGamma);
}

double CounterRng::uniform_at(std::uint64_t counter) const {
  return static_cast<double>(bits_at(counter) >> 11) * 0x1.0p-53;
}

CounterRng CounterRng::split(std::uint64_t tag) const {
  return CounterRng(mix64(mix64(key_) ^ mix64(tag + kGamma)));
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view scenario_id,
                          std::uint64_t per_index, std::uint64_t seed_index) {
  return CounterRng(master_seed)
      .split(hash_string(scenario_id))
      .split(per_index)
      .split(seed_index)
      .key();
}

}  // namespace fcwsim

#pragma once

#include <cstdint>
#include <random>

namespace cmrisps {

// Named RNG streams derived from one master seed. Enabling or disabling
// one randomized feature must not shift the draws of another, so each
// consumer pulls from its own stream.
enum class Stream : std::uint64_t {
  waveforms = 1,
  noise = 2,
  perturbations = 3,
  jitter = 4,
  scattering = 5,
  trials = 6,
};

// splitmix64 finalizer; decorrelates sequential seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, Stream stream) {
  return mix64(master ^ mix64(static_cast<std::uint64_t>(stream)));
}

inline std::uint64_t derive_trial_seed(std::uint64_t master, int trial) {
  return mix64(derive_seed(master, Stream::trials) ^
               mix64(static_cast<std::uint64_t>(trial) + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t master, Stream stream) {
  return std::mt19937_64(derive_seed(master, stream));
}

}  // namespace cmrisps

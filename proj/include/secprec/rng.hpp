#pragma once

// Deterministic substream derivation. Trial t of stream `tag` gets its own
// mt19937_64 seeded from (master_seed, tag, t), so serial and parallel runs
// produce bit-identical draws.

#include <cstdint>
#include <random>

namespace secprec {

inline uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t substream_seed(uint64_t master, uint64_t tag, uint64_t trial) {
  return splitmix64(splitmix64(master ^ splitmix64(tag)) ^ trial);
}

inline std::mt19937_64 make_rng(uint64_t master, uint64_t tag, uint64_t trial) {
  return std::mt19937_64(substream_seed(master, tag, trial));
}

}  // namespace secprec

#pragma once

#include <cstdint>
#include <random>

namespace ren {

/// splitmix64 finalizer; used to derive independent child seeds from a root
/// seed so each generated artifact (support, signs, noise, ...) has its own
/// stream and changing one knob does not shift the others.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t child_seed(std::uint64_t root, std::uint64_t stream) {
  return splitmix64(root ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
}

inline std::mt19937_64 make_engine(std::uint64_t root, std::uint64_t stream) {
  return std::mt19937_64(child_seed(root, stream));
}

}  // namespace ren

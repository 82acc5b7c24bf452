#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string_view>

namespace dedup {

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t state = kFnvOffset) {
  for (unsigned char c : bytes) {
    state ^= c;
    state *= kFnvPrime;
  }
  return state;
}

// splitmix64 finalizer; bijective on 64-bit values.
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

// Tabulation hashing over the 8 bytes of a 64-bit key: one 256-entry table
// per byte position, XORed together. 3-independent.
class TabulationHasher {
 public:
  explicit TabulationHasher(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (auto& table : tables_) {
      for (auto& entry : table) entry = rng();
    }
  }

  std::uint64_t operator()(std::uint64_t key) const {
    std::uint64_t h = 0;
    for (int i = 0; i < 8; ++i) {
      h ^= tables_[i][(key >> (8 * i)) & 0xff];
    }
    return h;
  }

 private:
  std::array<std::array<std::uint64_t, 256>, 8> tables_;
};

// Content fingerprint used to tie an index file to the corpus it was built
// from. Not cryptographic; mismatch detection only.
inline std::uint64_t content_hash(std::string_view bytes) {
  return fnv1a64(bytes);
}

}  // namespace dedup

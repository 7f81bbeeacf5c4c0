#pragma once

#include <cstdint>
#include <random>

namespace logcdens {

//! Seedable deterministic uniform-[0,1) stream.
//!
//! Backed by std::mt19937_64, whose output sequence is fixed by the
//! standard, so identical seeds reproduce identical streams on every
//! platform. Seeds are scrambled through splitmix64 before use so that
//! small consecutive seeds do not yield correlated streams.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0)
    : engine_(scramble(seed))
  {
  }

  //! Next uniform variate in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  //! Next raw 64-bit word.
  std::uint64_t next_raw() { return engine_(); }

  //! Independent deterministic stream derived from (seed, index).
  static Rng substream(std::uint64_t seed, std::uint64_t index)
  {
    return Rng(scramble(seed) ^ scramble(index * 0x9e3779b97f4a7c15ULL + 1));
  }

private:
  static std::uint64_t scramble(std::uint64_t x)
  {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

} // namespace logcdens

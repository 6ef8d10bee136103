#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace skewkrr {

// Every random draw in the library goes through this wrapper so results are
// pinned to the seed, independent of the standard library implementation.
// Logical streams (predictors, noise, partitions, ...) get their own seed via
// derive_seed, so experiments decompose reproducibly.

std::uint64_t splitmix64(std::uint64_t& state);

// Folds path components into the master seed one SplitMix64 step at a time.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

// Stable stream tags; changing them changes every seeded result downstream.
namespace stream {
inline constexpr std::uint64_t predictors = 1;
inline constexpr std::uint64_t noise = 2;
inline constexpr std::uint64_t partition = 3;
inline constexpr std::uint64_t bandwidth = 4;
inline constexpr std::uint64_t lambda_search = 5;
inline constexpr std::uint64_t test_grid = 6;
inline constexpr std::uint64_t split = 7;
}  // namespace stream

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // uniform on [0,1), 53-bit resolution
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform on (0,1]; safe as a log() argument
  double uniform01_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

  double normal();

  // uniform integer in [0, bound); unbiased by rejection
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // m distinct values from {0,...,n-1}, returned ascending
  std::vector<std::int64_t> sample_without_replacement(std::int64_t n, std::int64_t m);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skewkrr

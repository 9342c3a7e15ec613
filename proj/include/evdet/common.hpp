#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>

namespace evdet {

struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; message names the offending byte offset.
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SyncError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EstimationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Slice fed to a stateful session out of temporal order.
struct SequencingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic RNG used everywhere a seed is accepted.
using Rng = std::mt19937_64;

inline float uniform(Rng& rng, float lo, float hi) {
  return std::uniform_real_distribution<float>(lo, hi)(rng);
}

inline double uniformd(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) {  // inclusive bounds
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Worker cap for the few parallel sections; 0 or unset means "all cores".
inline int env_thread_cap() {
  const char* v = std::getenv("EVDET_THREADS");
  if (!v) return 0;
  int n = std::atoi(v);
  return n > 0 ? n : 0;
}

}  // namespace evdet

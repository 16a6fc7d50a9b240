#pragma once

#include <cstdint>
#include <string_view>

namespace qd {

// Deterministic splitmix64 generator with named substreams.
//
// Sessions draw preparation, insertion, measurement and attack randomness
// from separate streams so that enabling an attack does not perturb the
// other streams of an otherwise identical run. splitmix64 keeps every
// sequence identical across platforms and compilers; the standard library
// distributions are avoided because their output is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  // Independent stream derived from a master seed and a stream name.
  static Rng stream(uint64_t master_seed, std::string_view name) {
    uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a over the name
    for (char c : name) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ull;
    }
    return Rng(mix(master_seed ^ h));
  }

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound). Rejection sampling, no modulo bias.
  uint64_t uniform_int(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Samples an index from unnormalized nonnegative weights. Indices with
  // zero weight are never returned.
  int pick_weighted(const double* weights, int n) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += weights[i];
    double x = uniform() * total;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += weights[i];
      if (x < acc && weights[i] > 0.0) return i;
    }
    for (int i = n - 1; i >= 0; --i) {
      if (weights[i] > 0.0) return i;
    }
    return 0;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t state_;
};

}  // namespace qd

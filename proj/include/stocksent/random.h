#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace stocksent {

// Seeded generator with platform-independent draws. std::mt19937_64 is
// fully specified; the std distributions are not, so bounded integers and
// unit reals are derived here directly from the raw 64-bit stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(Mix(seed)) {}

  std::uint64_t Next() { return engine_(); }
  // Uniform in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n);
  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }
  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[Below(i)]);
    }
  }

  // splitmix64 finalizer; also used to derive independent child seeds.
  static std::uint64_t Mix(std::uint64_t x);
  static std::uint64_t Derive(std::uint64_t seed, std::uint64_t stream) {
    return Mix(seed ^ Mix(stream + 0x9e3779b97f4a7c15ULL));
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace stocksent

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace srcs {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

enum class rng_stream : std::uint64_t {
  covariates = 1,
  response = 2,
  censoring = 3,
  calibration = 4,
};

// xoshiro256++ generator seeded through splitmix64. Substreams are derived by
// hashing (master seed, stream id), so draws depend only on the pair and never
// on call interleaving elsewhere in the program.
class rng {
 public:
  explicit rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a;
    std::uint64_t z = splitmix64_next(s);
    s = z ^ (b + 0x9E3779B97F4A7C15ull);
    return splitmix64_next(s);
  }

  static rng substream(std::uint64_t master, std::uint64_t stream) {
    return rng(mix(master, stream));
  }
  static rng substream(std::uint64_t master, rng_stream stream) {
    return substream(master, static_cast<std::uint64_t>(stream));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on [0, 1) with 53 random bits
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal via Box-Muller; the second draw of each pair is cached
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  double cauchy() {
    return std::tan(3.141592653589793238462643383279502884 *
                    (uniform01() - 0.5));
  }

  // Student t with integer degrees of freedom; df == 1 is the Cauchy law.
  double student_t(unsigned df) {
    if (df == 0) throw std::invalid_argument("student_t: df must be positive");
    if (df == 1) return cauchy();
    double chisq = 0.0;
    for (unsigned i = 0; i < df; ++i) {
      const double z = normal();
      chisq += z * z;
    }
    return normal() / std::sqrt(chisq / static_cast<double>(df));
  }

  static constexpr const char* algorithm = "xoshiro256++/splitmix64/box-muller";

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace srcs

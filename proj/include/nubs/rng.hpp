#ifndef NUBS_RNG_HPP
#define NUBS_RNG_HPP

#include <cstdint>
#include <random>

#include "nubs/normal.hpp"

namespace nubs {

// Deterministic random source. Normals come from inverse-transform of
// uniforms built directly from mt19937_64 output bits, so a seed pins the
// exact stream on every platform.
class NormalRng {
  public:
    explicit NormalRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw strictly inside (0,1).
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard-normal draw via the quantile map.
    double normal() { return std_normal_quantile(uniform01()); }

    /// Raw 64-bit output, used to derive per-task child seeds.
    std::uint64_t next_u64() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace nubs

#endif

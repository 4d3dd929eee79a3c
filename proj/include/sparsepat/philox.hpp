#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Every draw is a pure function of (key, stream, index), so matrices and
// noise vectors come out the same regardless of generation order or thread count.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace sparsepat {

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

namespace detail {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr void philox_round(PhiloxBlock& ctr, const PhiloxKey& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const auto lo0 = static_cast<std::uint32_t>(p0);
  const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const auto lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

constexpr PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += detail::kPhiloxW0;
      key[1] += detail::kPhiloxW1;
    }
    detail::philox_round(ctr, key);
  }
  return ctr;
}

// Fixed stream identifiers. Streams partition the counter space of one seed.
enum class Stream : std::uint64_t {
  design = 1,
  noise = 2,
  trial_design_seed = 3,
  trial_noise_seed = 4,
  trial_pattern = 5,
  oracle = 100,
};

class CounterRng {
public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}
  constexpr CounterRng(std::uint64_t seed, Stream stream) noexcept
      : CounterRng(seed, static_cast<std::uint64_t>(stream)) {}

  constexpr PhiloxBlock block(std::uint64_t index) const noexcept {
    return philox4x32_10({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)},
                         key_);
  }

  constexpr std::uint64_t bits64(std::uint64_t index) const noexcept {
    const auto b = block(index);
    return (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
  }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform(std::uint64_t index) const noexcept {
    return (static_cast<double>(bits64(index) >> 11) + 0.5) * 0x1.0p-53;
  }

  // index-th standard normal in the stream; pairs (2j, 2j+1) share one Box-Muller block.
  double normal(std::uint64_t index) const noexcept {
    const auto b = block(index / 2);
    const std::uint64_t a = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
    const std::uint64_t c = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
    const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
    const double u2 = (static_cast<double>(c >> 11) + 0.5) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return (index % 2 == 0) ? r * std::cos(theta) : r * std::sin(theta);
  }

  // Fills out[i] = normal(first + i), computing each Box-Muller pair once.
  template <typename Out>
  void fill_normals(std::uint64_t first, std::size_t count, Out&& out) const {
    for (std::size_t i = 0; i < count;) {
      const std::uint64_t idx = first + i;
      const auto b = block(idx / 2);
      const std::uint64_t a = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
      const std::uint64_t c = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
      const double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
      const double u2 = (static_cast<double>(c >> 11) + 0.5) * 0x1.0p-53;
      const double r = std::sqrt(-2.0 * std::log(u1));
      const double theta = 2.0 * std::numbers::pi * u2;
      if (idx % 2 == 0) {
        out(i, r * std::cos(theta));
        if (++i < count) out(i, r * std::sin(theta));
        ++i;
      } else {
        out(i, r * std::sin(theta));
        ++i;
      }
    }
  }

private:
  PhiloxKey key_;
  std::uint64_t stream_;
};

// Derives an independent 64-bit seed for (master_seed, stream, index).
inline std::uint64_t derive_seed(std::uint64_t master_seed, Stream stream, std::uint64_t index) {
  return CounterRng(master_seed, stream).bits64(index);
}

}  // namespace sparsepat

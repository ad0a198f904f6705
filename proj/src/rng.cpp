#include "gaussep/rng.hpp"

#include <array>

namespace gaussep {

namespace {

std::array<std::uint32_t, 6> words(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32), static_cast<std::uint32_t>(b),
          static_cast<std::uint32_t>(b >> 32), static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  const auto w = words(seed, stream, chunk);
  std::seed_seq seq(w.begin(), w.end());
  return Rng(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t branch) {
  const auto w = words(seed, branch, 0x5eedULL);
  std::seed_seq seq(w.begin(), w.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace gaussep

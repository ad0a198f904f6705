#pragma once

// Deterministic random streams.
//
// Every stream is a std::mt19937_64 seeded through std::seed_seq from the
// tuple (seed, stream, chunk). Work that is split into fixed-size chunks
// draws each chunk from its own stream, so results do not depend on how
// chunks are distributed over threads.

#include <cstdint>
#include <random>

namespace gaussep {

using Rng = std::mt19937_64;

Rng make_stream(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t chunk = 0);

/// Derives a child seed; used to give independent branches of a run their
/// own seed space.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t branch);

}  // namespace gaussep

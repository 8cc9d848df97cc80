#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>

namespace pltrack {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Seed for an independent stream identified by a master seed and a tag path.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

// Stable 64-bit tag for a string (FNV-1a).
std::uint64_t tag_of(const char* s);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write into slot i so results do not depend
// on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace pltrack

#ifndef HYPERLAB_RANDOM_GEN_HPP
#define HYPERLAB_RANDOM_GEN_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "hyperlab/matrix_num.hpp"
#include "hyperlab/pattern.hpp"

namespace hyperlab {

/// splitmix64 step; the documented mixing primitive for all derived seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a over the bytes of a string.
std::uint64_t fnv1a64(std::string_view s);

/// Per-trial seed: splitmix64(splitmix64(splitmix64(master) ^ fnv1a64(tag)) + trial).
std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t trial);

/// Deterministic random operator. Distributions: "gaussian" (independent
/// standard normal real and imaginary parts), "zero", "unitary" (QR phase of
/// a gaussian), "sparse" (gaussian with three quarters of entries zeroed).
CMatrix random_operator(std::uint64_t seed, int m, int n, const std::string& distribution);

/// Random pattern with i.i.d. entries of the given density.
Pattern random_pattern(std::uint64_t seed, int m, int n, double density);

/// Random contractive pattern: rows and columns are scattered over disjoint
/// blocks, producing a disjoint union of complete bicliques. Never empty.
Pattern random_contractive_pattern(std::uint64_t seed, int m, int n);

} // namespace hyperlab

#endif

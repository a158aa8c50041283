#ifndef EFNZ_RNG_HPP
#define EFNZ_RNG_HPP

#include <cstdint>
#include <string_view>

#include "efnz/tensor.hpp"

namespace efnz {

/// Seeded deterministic random stream.
///
/// Bit generator: xoshiro256++ seeded through SplitMix64, so a given
/// (seed) always yields the same 64-bit sequence. Normal variates use the
/// Marsaglia polar method, which touches only sqrt/log and is therefore
/// stable across conforming libms.
///
/// Child streams are derived from (seed, label): the label is FNV-1a
/// hashed and mixed into the parent's original seed, so children are
/// reproducible no matter how far the parent has advanced. Use distinct
/// labels; identical labels give identical streams.
///
/// A stream is single-owner. For parallel work, derive one child per task
/// up front and hand each task its own stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    /// Reproducible independent stream for (original seed, label).
    RngStream child(std::string_view label) const;

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_uniform();

    /// Standard normal variate (Marsaglia polar, second value cached).
    double next_normal();

private:
    std::uint64_t seed_ = 0;
    std::uint64_t state_[4] = {0, 0, 0, 0};
    bool has_cached_ = false;
    double cached_ = 0.0;
};

/// Tensor of i.i.d. standard normal entries; advances rng deterministically.
/// Throws ShapeError on empty shape or zero extents.
Tensor randn(const std::vector<std::size_t>& shape, RngStream& rng);

}  // namespace efnz

#endif  // EFNZ_RNG_HPP

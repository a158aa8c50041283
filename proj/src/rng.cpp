#include "efnz/rng.hpp"

#include <cmath>

namespace efnz {

namespace {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

RngStream RngStream::child(std::string_view label) const {
    std::uint64_t sm = seed_;
    std::uint64_t child_seed = splitmix64(sm) ^ fnv1a64(label);
    return RngStream(child_seed);
}

std::uint64_t RngStream::next_u64() {
    // xoshiro256++ step.
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double v1 = 0.0, v2 = 0.0, s = 0.0;
    do {
        v1 = 2.0 * next_uniform() - 1.0;
        v2 = 2.0 * next_uniform() - 1.0;
        s = v1 * v1 + v2 * v2;
    } while (s >= 1.0 || s == 0.0);
    double scale = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v2 * scale;
    has_cached_ = true;
    return v1 * scale;
}

Tensor randn(const std::vector<std::size_t>& shape, RngStream& rng) {
    Tensor out = Tensor::zeros(shape);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.next_normal();
    return out;
}

}  // namespace efnz

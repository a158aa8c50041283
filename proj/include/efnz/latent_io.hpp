#ifndef EFNZ_LATENT_IO_HPP
#define EFNZ_LATENT_IO_HPP

#include <filesystem>

#include "efnz/latent.hpp"

namespace efnz {

/// Binary latent-code container. Little-endian layout:
///
///   magic       4 bytes  "EFNZ"
///   version     u16      current = 1; loaders accept 1..current while the
///                        payload layout is unchanged
///   fingerprint u64      schedule fingerprint at extraction
///   method      u8       0 edit-friendly, 1 cyclediffusion, 2 native, 3 ddim
///   flags       u8       bit 0: aux chain present, bit 1: z_1 fixed to zero
///   T           u32
///   rank        u32
///   extents     u64 * rank
///   cond_len    u32      extraction condition label (0 = none)
///   cond        bytes
///   payload     f64 * N * (1 + T [+ T+1])
///               x_T, then z_T .. z_1, then (if flagged) x_T .. x_0
///
/// save/load round-trips are bitwise identical. Bad magic or version raises
/// FormatError, short payloads raise FormatError without partial results.
inline constexpr std::uint16_t kLatentFormatVersion = 1;

void save_latent(const LatentCode& code, const std::filesystem::path& path);

LatentCode load_latent(const std::filesystem::path& path);

}  // namespace efnz

#endif  // EFNZ_LATENT_IO_HPP

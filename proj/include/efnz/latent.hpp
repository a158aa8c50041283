#ifndef EFNZ_LATENT_HPP
#define EFNZ_LATENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "efnz/schedule.hpp"
#include "efnz/tensor.hpp"

namespace efnz {

enum class InversionMethod : std::uint8_t {
    EditFriendly = 0,
    CycleDiffusion = 1,
    Native = 2,
    Ddim = 3,
};

const char* to_string(InversionMethod m);
InversionMethod inversion_method_from_string(const std::string& s);

/// The latent code of the reverse process: x_T plus the per-step noise
/// maps z_T..z_1, and optionally the auxiliary state chain x_0..x_T used
/// for skipped-start generation.
struct LatentCode {
    Tensor x_T;
    /// 1-based: z[t] for t in [1, T]; z[0] stays empty.
    std::vector<Tensor> z;
    /// Either empty or T+1 states indexed by t, with aux_chain[0] == x_0.
    std::vector<Tensor> aux_chain;
    InversionMethod method = InversionMethod::Native;
    std::optional<std::string> cond;
    std::uint64_t schedule_fingerprint = 0;
    int T = 0;
    /// True when the schedule's zero_final_noise convention fixed z_1 to
    /// the zero tensor at extraction time.
    bool z1_is_zero = false;

    bool has_aux_chain() const { return !aux_chain.empty(); }
    const std::vector<std::size_t>& shape() const { return x_T.shape(); }

    /// Throws IncompatibleLatentError when the code was not extracted
    /// under this schedule.
    void require_compatible(const Schedule& schedule) const;
};

}  // namespace efnz

#endif  // EFNZ_LATENT_HPP

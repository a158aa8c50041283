#include "efnz/latent.hpp"

#include <string>

namespace efnz {

const char* to_string(InversionMethod m) {
    switch (m) {
        case InversionMethod::EditFriendly: return "edit-friendly";
        case InversionMethod::CycleDiffusion: return "cyclediffusion";
        case InversionMethod::Native: return "native";
        case InversionMethod::Ddim: return "ddim";
    }
    return "unknown";
}

InversionMethod inversion_method_from_string(const std::string& s) {
    if (s == "edit-friendly") return InversionMethod::EditFriendly;
    if (s == "cyclediffusion") return InversionMethod::CycleDiffusion;
    if (s == "native") return InversionMethod::Native;
    if (s == "ddim") return InversionMethod::Ddim;
    throw ConfigError("unknown inversion method '" + s + "'");
}

void LatentCode::require_compatible(const Schedule& schedule) const {
    if (schedule_fingerprint != schedule.fingerprint()) {
        throw IncompatibleLatentError(
            "latent code was extracted under a different schedule (fingerprint mismatch)");
    }
    if (T != schedule.T) {
        throw IncompatibleLatentError("latent code step count " + std::to_string(T) +
                                      " does not match schedule T=" + std::to_string(schedule.T));
    }
}

}  // namespace efnz

#include "efnz/latent_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "efnz/error.hpp"

namespace efnz {

namespace {

constexpr char kMagic[4] = {'E', 'F', 'N', 'Z'};

// The layout is published little-endian; on big-endian hosts the scalar
// writers below would need byte swaps.
static_assert(std::endian::native == std::endian::little,
              "latent files are little-endian; add byte swapping for this host");

template <typename T>
void put(std::string& out, T v) {
    char raw[sizeof(T)];
    std::memcpy(raw, &v, sizeof(T));
    out.append(raw, sizeof(T));
}

void put_tensor(std::string& out, const Tensor& t) {
    out.append(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(double));
}

class Reader {
public:
    explicit Reader(std::string bytes) : bytes_(std::move(bytes)) {}

    template <typename T>
    T get() {
        if (pos_ + sizeof(T) > bytes_.size()) {
            throw FormatError("latent file truncated in header");
        }
        T v;
        std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return v;
    }

    std::string get_string(std::size_t n) {
        if (pos_ + n > bytes_.size()) throw FormatError("latent file truncated in header");
        std::string s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    Tensor get_tensor(const std::vector<std::size_t>& shape) {
        std::size_t count = 1;
        for (std::size_t e : shape) count *= e;
        std::size_t want = count * sizeof(double);
        if (pos_ + want > bytes_.size()) {
            throw FormatError("latent file truncated: payload ends early");
        }
        std::vector<double> values(count);
        std::memcpy(values.data(), bytes_.data() + pos_, want);
        pos_ += want;
        return Tensor::from_values(shape, std::move(values));
    }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::string bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_latent(const LatentCode& code, const std::filesystem::path& path) {
    if (code.T < 1 || code.z.size() != static_cast<std::size_t>(code.T) + 1) {
        throw ConfigError("latent code is incomplete; nothing to save");
    }
    std::string out;
    out.append(kMagic, 4);
    put<std::uint16_t>(out, kLatentFormatVersion);
    put<std::uint64_t>(out, code.schedule_fingerprint);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(code.method));
    std::uint8_t flags = 0;
    if (code.has_aux_chain()) flags |= 1;
    if (code.z1_is_zero) flags |= 2;
    put<std::uint8_t>(out, flags);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(code.T));
    const auto& shape = code.shape();
    put<std::uint32_t>(out, static_cast<std::uint32_t>(shape.size()));
    for (std::size_t e : shape) put<std::uint64_t>(out, static_cast<std::uint64_t>(e));
    const std::string cond = code.cond.value_or("");
    put<std::uint32_t>(out, static_cast<std::uint32_t>(cond.size()));
    out += cond;

    put_tensor(out, code.x_T);
    for (int t = code.T; t >= 1; --t) put_tensor(out, code.z[static_cast<std::size_t>(t)]);
    if (code.has_aux_chain()) {
        if (code.aux_chain.size() != static_cast<std::size_t>(code.T) + 1) {
            throw ConfigError("auxiliary chain must have T+1 states");
        }
        for (int t = code.T; t >= 0; --t) {
            put_tensor(out, code.aux_chain[static_cast<std::size_t>(t)]);
        }
    }

    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw ConfigError("failed writing '" + path.string() + "'");
}

LatentCode load_latent(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw FormatError("cannot open latent file '" + path.string() + "'");
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    Reader r(std::move(bytes));

    std::string magic = r.get_string(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) {
        throw FormatError("not a latent-code file (bad magic)");
    }
    std::uint16_t version = r.get<std::uint16_t>();
    if (version == 0 || version > kLatentFormatVersion) {
        throw FormatError("unsupported latent format version " + std::to_string(version));
    }

    LatentCode code;
    code.schedule_fingerprint = r.get<std::uint64_t>();
    std::uint8_t method = r.get<std::uint8_t>();
    if (method > 3) throw FormatError("unknown inversion method tag in latent file");
    code.method = static_cast<InversionMethod>(method);
    std::uint8_t flags = r.get<std::uint8_t>();
    code.z1_is_zero = (flags & 2) != 0;
    code.T = static_cast<int>(r.get<std::uint32_t>());
    if (code.T < 1) throw FormatError("latent file declares T < 1");
    std::uint32_t rank = r.get<std::uint32_t>();
    if (rank == 0 || rank > 8) throw FormatError("latent file declares unusable rank");
    std::vector<std::size_t> shape(rank);
    for (auto& e : shape) {
        e = static_cast<std::size_t>(r.get<std::uint64_t>());
        if (e == 0) throw FormatError("latent file declares a zero extent");
    }
    std::uint32_t cond_len = r.get<std::uint32_t>();
    std::string cond = r.get_string(cond_len);
    if (!cond.empty()) code.cond = cond;

    code.x_T = r.get_tensor(shape);
    code.z.resize(static_cast<std::size_t>(code.T) + 1);
    for (int t = code.T; t >= 1; --t) {
        code.z[static_cast<std::size_t>(t)] = r.get_tensor(shape);
    }
    if (flags & 1) {
        code.aux_chain.resize(static_cast<std::size_t>(code.T) + 1);
        for (int t = code.T; t >= 0; --t) {
            code.aux_chain[static_cast<std::size_t>(t)] = r.get_tensor(shape);
        }
    }
    if (r.remaining() != 0) {
        throw FormatError("latent file has trailing bytes; refusing to load");
    }
    return code;
}

}  // namespace efnz

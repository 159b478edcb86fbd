#include <graphcrop/rng.hpp>

namespace graphcrop {
namespace {
constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t graph_index, std::uint64_t epoch) noexcept {
    std::uint64_t h = mix64(seed + golden);
    h = mix64(h ^ (graph_index + 0x632BE59BD9B4E019ULL));
    h = mix64(h ^ (epoch + 0x8CB92BA72F3D8DD7ULL));
    return h;
}

RngStream::result_type RngStream::operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * golden);
}

double RngStream::uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    unsigned __int128 product = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            product = static_cast<unsigned __int128>((*this)()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

} // namespace graphcrop

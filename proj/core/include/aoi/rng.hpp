#ifndef AOI_RNG_HPP
#define AOI_RNG_HPP

#include <array>
#include <cstdint>

namespace aoi {

/// Counter-based Philox4x64-10 block function. Stateless: the caller owns
/// the (counter, key) coordinates, which is what makes per-(run, user)
/// substreams provably disjoint — distinct keys select distinct bijections,
/// distinct counters select distinct blocks of the same stream.
namespace philox {

inline constexpr std::uint64_t kMult0 = 0xD2E7470EE14C6C93ULL;
inline constexpr std::uint64_t kMult1 = 0xCA5A826395121157ULL;
inline constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> counter,
                                          std::array<std::uint64_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        const unsigned __int128 p0 = static_cast<unsigned __int128>(kMult0) * counter[0];
        const unsigned __int128 p1 = static_cast<unsigned __int128>(kMult1) * counter[2];
        const std::uint64_t hi0 = static_cast<std::uint64_t>(p0 >> 64);
        const std::uint64_t lo0 = static_cast<std::uint64_t>(p0);
        const std::uint64_t hi1 = static_cast<std::uint64_t>(p1 >> 64);
        const std::uint64_t lo1 = static_cast<std::uint64_t>(p1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return counter;
}

} // namespace philox

/// Maps 64 random bits to a double in [0, 1).
inline double uniform_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Random stream of one simulated user within one run. Draw i of domain d
/// is philox(counter = {i, d, 0, 0}, key = {base_seed, run << 32 | user}),
/// so every (seed, run, user, slot) coordinate maps to one fixed value and
/// runs can execute in any order or in parallel.
class SlotStream {
public:
    SlotStream(std::uint64_t base_seed, std::uint32_t run_index, std::uint32_t user_index)
        : key_{base_seed,
               (static_cast<std::uint64_t>(run_index) << 32) | user_index} {}

    /// Per-slot decision draw (domain 0): one uniform per user per slot.
    double uniform_at(std::uint64_t slot) const { return draw(slot, 0); }

    /// Initialization draw (domain 1), disjoint from the slot domain.
    double init_uniform(std::uint64_t index = 0) const { return draw(index, 1); }

private:
    double draw(std::uint64_t counter, std::uint64_t domain) const {
        return uniform_from_bits(philox::block({counter, domain, 0, 0}, key_)[0]);
    }

    std::array<std::uint64_t, 2> key_;
};

} // namespace aoi

#endif

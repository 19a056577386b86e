#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace znlab {

/// All randomness flows through one seeded generator family; each draw site
/// is labeled by purpose and index so realizations are independent of call
/// order and scheduling.
class RngFamily {
  public:
    explicit RngFamily(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::mt19937_64 stream(std::string_view label, std::uint64_t index = 0) const {
        std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the label
        for (const char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        return std::mt19937_64(splitmix(splitmix(seed_ ^ h) + index));
    }

  private:
    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
};

}  // namespace znlab

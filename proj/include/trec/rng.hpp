#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace trec {

// Generator identifier recorded in run reports. mt19937_64 is fully pinned
// by the C++ standard; the Gaussian and bounded-int transforms below are
// hand-rolled because std::*_distribution output is implementation-defined.
inline constexpr const char* kPrngId = "mt19937_64/box-muller";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Named sub-stream seed: hash(master, stream, role). Used everywhere a
// component needs its own generator, so results never depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::string_view role) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the role tag
    for (unsigned char c : role) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = splitmix64(master ^ splitmix64(h));
    return splitmix64(s ^ splitmix64(stream ^ 0x6a09e667f3bcc909ULL));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform on [0,1), 53-bit resolution
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, bound), bound > 0; mask rejection, unbiased
    std::uint64_t below(std::uint64_t bound) {
        assert(bound > 0);
        std::uint64_t mask = bound - 1;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            std::uint64_t r = next_u64() & mask;
            if (r < bound) return r;
        }
    }

    // standard normal via Box-Muller; the sine mate is cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so log() stays finite
        double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace trec

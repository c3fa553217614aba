#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded randomness with per-trial substreams. Trial i always sees the same
// draws for a given master seed, no matter how many workers run the batch or
// in which order trials execute. Gaussian draws use the polar method instead
// of std::normal_distribution, whose algorithm the standard leaves open.

namespace tvc {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Substream seed for (master, index); independent of draw order elsewhere.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

class TrialRng {
public:
    explicit TrialRng(std::uint64_t seed) : engine_(seed) {}

    static TrialRng substream(std::uint64_t master, std::uint64_t index) {
        return TrialRng(substream_seed(master, index));
    }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [-half_width, +half_width].
    double uniform_symmetric(double half_width) {
        return (2.0 * uniform() - 1.0) * half_width;
    }

    // Marsaglia polar method; no cached half like std::normal_distribution.
    double normal(double mean, double sigma) {
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        return mean + sigma * u * std::sqrt(-2.0 * std::log(s) / s);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tvc

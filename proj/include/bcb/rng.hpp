// Self-contained xoshiro256** generator. Search reproducibility depends on a
// stable stream per seed, which the standard <random> distributions do not
// guarantee across library versions.
#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace bcb {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the xoshiro state
        std::uint64_t x = seed;
        for (auto& s : state_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            s = z ^ (z >> 31);
        }
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in (0, 1], safe as a log argument.
    double uniform_pos() {
        double u = uniform();
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double exponential() { return -std::log(uniform_pos()); }

    std::uint32_t below(std::uint32_t n) { return static_cast<std::uint32_t>(next_u64() % n); }

    // Dirichlet(1) = normalized iid exponentials.
    void dirichlet(std::span<double> out) {
        double sum = 0.0;
        for (auto& v : out) {
            v = exponential();
            sum += v;
        }
        for (auto& v : out) v /= sum;
    }

    std::vector<double> dirichlet(std::size_t n) {
        std::vector<double> v(n);
        dirichlet(std::span<double>(v));
        return v;
    }

  private:
    std::uint64_t state_[4];
};

}  // namespace bcb

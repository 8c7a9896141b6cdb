#pragma once

#include <cstdint>
#include <random>

namespace covlab {

// Reproducibility contract: every stochastic operation takes an explicit Seed
// and is a pure function of it.
struct Seed {
    std::uint64_t value = 0;
};

inline std::mt19937_64 make_rng(Seed seed) { return std::mt19937_64(seed.value); }

// splitmix64 finalizer; decorrelates consecutive inputs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent per-stream seed (e.g. one stream per subarea or per sweep job).
inline Seed derive_seed(Seed master, std::uint64_t stream) {
    return Seed{mix64(master.value + 0x9e3779b97f4a7c15ULL * (stream + 1))};
}

}  // namespace covlab

// Seeded RNG with stdlib-independent bounded draws so that shot
// selection reproduces bit-for-bit across platforms.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace claimpipe {

class SeededRng {
   public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform draw in [0, n) via 128-bit multiply-shift.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[bounded(i)]);
        }
    }

    /// First k elements of a seeded permutation of v (k clamped to size).
    template <typename T>
    std::vector<T> sample_without_replacement(std::vector<T> v, std::size_t k) {
        if (k > v.size()) k = v.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::swap(v[i], v[i + bounded(v.size() - i)]);
        }
        v.resize(k);
        return v;
    }

   private:
    std::mt19937_64 engine_;
};

}  // namespace claimpipe

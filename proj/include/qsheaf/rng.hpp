#ifndef QSHEAF_RNG_HPP
#define QSHEAF_RNG_HPP

#include <cstdint>
#include <string_view>

namespace qsheaf {

/* Deterministic splitmix64 stream.  We do not use <random> distributions:
   their output is implementation-defined and we promise byte-identical
   results across platforms for a fixed --seed. */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [lo, hi], inclusive; rejection sampling
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());  // full range
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do { x = next(); } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    // derived independent stream, stable under reordering of other draws
    Rng fork(std::string_view tag) const {
        std::uint64_t h = 0xcbf29ce484222325ull ^ state_;
        for (char c : tag) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ull;
        }
        return Rng(h);
    }

    Rng fork(std::uint64_t salt) const {
        Rng r(state_ ^ (salt * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull));
        r.next();
        return r;
    }

private:
    std::uint64_t state_;
};

}  // namespace qsheaf

#endif

#pragma once

#include <gmpxx.h>
#include <cstdint>

namespace relcluster {

// splitmix64: tiny deterministic generator, stable across platforms. The
// report determinism contract forbids std:: distributions here.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

    long int_in(long lo, long hi) // inclusive
    {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    mpq_class rational(long max_num = 9, long max_den = 1)
    {
        long num = int_in(-max_num, max_num);
        long den = max_den > 1 ? int_in(1, max_den) : 1;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

private:
    std::uint64_t state_;
};

} // namespace relcluster

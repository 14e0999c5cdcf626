#include "pqw/rng.h"

#include <random>

#include "pqw/error.h"

namespace pqw {

uint64_t Rng::uniform_below(uint64_t n) {
    if (n == 0) {
        throw Error(ErrorCode::ParameterError, "uniform_below(0)");
    }
    if ((n & (n - 1)) == 0) {
        return next_u64() & (n - 1);
    }
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % n;
}

void Rng::fill(uint8_t* out, size_t len) {
    size_t i = 0;
    while (i < len) {
        uint64_t v = next_u64();
        for (int k = 0; k < 8 && i < len; k++, i++) {
            out[i] = uint8_t(v >> (8 * k));
        }
    }
}

Bytes Rng::bytes(size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

uint64_t SystemRng::next_u64() {
    static thread_local std::random_device rd;
    return (uint64_t(rd()) << 32) | uint64_t(rd());
}

uint64_t SplitMix64Rng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace pqw

#pragma once

#include <cstdint>

#include "pqw/bytes.h"

namespace pqw {

// Random source injected into every sampling operation so tests can replay
// exact streams.
class Rng {
  public:
    virtual ~Rng() = default;
    virtual uint64_t next_u64() = 0;

    // Unbiased value in [0, n) via rejection; n must be > 0.
    uint64_t uniform_below(uint64_t n);
    void fill(uint8_t* out, size_t len);
    Bytes bytes(size_t len);
};

class SystemRng : public Rng {
  public:
    uint64_t next_u64() override;
};

class SplitMix64Rng : public Rng {
  public:
    explicit SplitMix64Rng(uint64_t seed) : state_(seed) {}
    uint64_t next_u64() override;

  private:
    uint64_t state_;
};

}  // namespace pqw

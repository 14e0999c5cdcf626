#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "pqw/bytes.h"

namespace pqw {

using Digest32 = std::array<uint8_t, 32>;

class Sha256 {
  public:
    Sha256();
    void update(const uint8_t* data, size_t len);
    void update(const Bytes& data) { update(data.data(), data.size()); }
    void update(std::string_view s) {
        update(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }
    Digest32 finish();

  private:
    void compress(const uint8_t block[64]);

    uint32_t h_[8];
    uint8_t buf_[64];
    size_t buf_len_;
    uint64_t total_len_;
};

Digest32 sha256(const uint8_t* data, size_t len);
Digest32 sha256(const Bytes& data);
Digest32 sha256(std::string_view s);

}  // namespace pqw

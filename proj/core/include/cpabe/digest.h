#pragma once

#include <array>
#include <string_view>

#include "cpabe/bytes.h"

namespace cpabe {

using Digest32 = std::array<std::uint8_t, 32>;

Digest32 sha256(ByteView data);
Digest32 sha256(std::string_view data);

// Incremental variant for the few places that hash several segments.
class Sha256 {
  public:
    Sha256();
    ~Sha256();
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Sha256& update(ByteView data);
    Sha256& update(std::string_view data);
    Digest32 finish();

  private:
    void* ctx_;
};

}  // namespace cpabe

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>

namespace rancca::detail {

/// Minimal FIPS 180-4 SHA-256, enough to fingerprint input files for run
/// manifests.
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const unsigned char* data, std::size_t len);
    /// Finishes the digest; the instance must be reset before reuse.
    std::array<unsigned char, 32> digest();

private:
    void process_block(const unsigned char* block);

    std::uint32_t state_[8];
    std::uint64_t total_bits_ = 0;
    unsigned char buffer_[64];
    std::size_t buffered_ = 0;
};

std::string to_hex(const std::array<unsigned char, 32>& digest);

} // namespace rancca::detail

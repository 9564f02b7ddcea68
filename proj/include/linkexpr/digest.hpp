#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace linkexpr {

/// 128-bit BLAKE2b fingerprint.
struct Digest128 {
    std::array<std::uint64_t, 2> words{};

    std::string hex() const;
    friend auto operator<=>(const Digest128&, const Digest128&) = default;
};

Digest128 digest128(std::span<const std::uint64_t> tokens);
Digest128 digest128_bytes(std::string_view bytes);

/// Hex SHA-256 of a byte string / of a file's contents.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::string& path);

}  // namespace linkexpr

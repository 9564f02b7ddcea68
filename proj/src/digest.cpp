#include "linkexpr/digest.hpp"

#include "linkexpr/error.hpp"

#include <sodium.h>

#include <fstream>
#include <sstream>
#include <vector>

namespace linkexpr {

namespace {

void ensure_sodium() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw Error(ErrorKind::io, "libsodium initialization failed");
}

std::string to_hex(const unsigned char* data, std::size_t len) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(2 * len, '0');
    for (std::size_t i = 0; i < len; ++i) {
        out[2 * i] = kHex[data[i] >> 4];
        out[2 * i + 1] = kHex[data[i] & 0xF];
    }
    return out;
}

Digest128 from_bytes(const unsigned char (&raw)[16]) {
    Digest128 d;
    for (int w = 0; w < 2; ++w) {
        std::uint64_t x = 0;
        for (int b = 0; b < 8; ++b) x |= std::uint64_t{raw[8 * w + b]} << (8 * b);
        d.words[static_cast<std::size_t>(w)] = x;
    }
    return d;
}

}  // namespace

std::string Digest128::hex() const {
    unsigned char raw[16];
    for (int w = 0; w < 2; ++w) {
        for (int b = 0; b < 8; ++b) raw[8 * w + b] = static_cast<unsigned char>(words[static_cast<std::size_t>(w)] >> (8 * b));
    }
    return to_hex(raw, 16);
}

Digest128 digest128(std::span<const std::uint64_t> tokens) {
    // Little-endian serialization keeps digests identical across hosts.
    std::vector<unsigned char> bytes(tokens.size() * 8);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (int b = 0; b < 8; ++b) bytes[8 * i + static_cast<std::size_t>(b)] = static_cast<unsigned char>(tokens[i] >> (8 * b));
    }
    return digest128_bytes({reinterpret_cast<const char*>(bytes.data()), bytes.size()});
}

Digest128 digest128_bytes(std::string_view bytes) {
    ensure_sodium();
    unsigned char raw[16];
    crypto_generichash(raw, sizeof raw, reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(),
                       nullptr, 0);
    return from_bytes(raw);
}

std::string sha256_hex(std::string_view bytes) {
    ensure_sodium();
    unsigned char raw[crypto_hash_sha256_BYTES];
    crypto_hash_sha256(raw, reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size());
    return to_hex(raw, sizeof raw);
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return sha256_hex(buffer.str());
}

}  // namespace linkexpr

#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

#include "aerostate/core/errors.hpp"
#include "aerostate/core/random.hpp"

namespace aerostate {

/// 256-bit binary feature descriptor (ORB-sized).
struct Descriptor {
  static constexpr std::size_t kBits = 256;
  static constexpr std::size_t kWords = kBits / 64;

  std::array<std::uint64_t, kWords> words{};

  bool bit(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1U; }
  void flip(std::size_t i) { words[i / 64] ^= std::uint64_t{1} << (i % 64); }

  friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

inline int hamming(const Descriptor& a, const Descriptor& b) {
  int d = 0;
  for (std::size_t i = 0; i < Descriptor::kWords; ++i) d += std::popcount(a.words[i] ^ b.words[i]);
  return d;
}

inline Descriptor random_descriptor(Rng& rng) {
  Descriptor d;
  for (auto& w : d.words) w = rng();
  return d;
}

/// 64 lowercase hex digits, most significant word first.
inline std::string to_hex(const Descriptor& d) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(Descriptor::kBits / 4);
  for (std::size_t w = Descriptor::kWords; w-- > 0;) {
    for (int shift = 60; shift >= 0; shift -= 4) out.push_back(kDigits[(d.words[w] >> shift) & 0xF]);
  }
  return out;
}

inline Descriptor descriptor_from_hex(std::string_view hex) {
  if (hex.size() != Descriptor::kBits / 4) {
    throw InvalidArgument("descriptor hex must have 64 digits");
  }
  Descriptor d;
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[i];
    std::uint64_t nibble;
    if (c >= '0' && c <= '9') {
      nibble = static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      nibble = static_cast<std::uint64_t>(c - 'a' + 10);
    } else if (c >= 'A' && c <= 'F') {
      nibble = static_cast<std::uint64_t>(c - 'A' + 10);
    } else {
      throw InvalidArgument("descriptor hex contains a non-hex character");
    }
    const std::size_t word = Descriptor::kWords - 1 - i / 16;
    const std::size_t shift = 60 - 4 * (i % 16);
    d.words[word] |= nibble << shift;
  }
  return d;
}

}  // namespace aerostate

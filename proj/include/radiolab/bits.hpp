#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace radiolab {

// Fixed-width bit vector backed by 64-bit words. Bits beyond size() are
// always zero, so word-wise equality and comparison are well defined.
class DynamicBitset {
 public:
  DynamicBitset() = default;
  explicit DynamicBitset(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t size() const noexcept { return width_; }
  bool test(std::size_t i) const noexcept {
    return i < width_ && ((words_[i >> 6] >> (i & 63)) & 1U) != 0;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void reset() noexcept {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // Index of the lowest set bit, or size() if none.
  std::size_t lowest() const noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
    return width_;
  }

  DynamicBitset& operator^=(const DynamicBitset& other) noexcept {
    for (std::size_t w = 0; w < words_.size() && w < other.words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }
  std::vector<std::uint64_t>& words() noexcept { return words_; }

  // Little-endian in bit index: bit 0 is the least significant bit of the
  // last hex digit. Width is rounded up to whole nibbles.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t nibbles = width_ == 0 ? 1 : (width_ + 3) / 4;
    std::string out(nibbles, '0');
    for (std::size_t n = 0; n < nibbles; ++n) {
      unsigned v = 0;
      for (std::size_t b = 0; b < 4; ++b) {
        if (test(n * 4 + b)) v |= 1U << b;
      }
      out[nibbles - 1 - n] = digits[v];
    }
    return out;
  }

  friend bool operator==(const DynamicBitset&, const DynamicBitset&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace radiolab

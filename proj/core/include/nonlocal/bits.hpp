#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nonlocal {

/// 0/1-valued bit. Kept as a byte so it XORs naturally.
using Bit = std::uint8_t;

/// Two-valued sign. The mapping to bits is fixed library-wide:
/// bit 0 <-> +1, bit 1 <-> -1 (the hatted view (-1)^bit).
enum class Spin : std::int8_t { plus = 1, minus = -1 };

constexpr int value(Spin s) { return static_cast<int>(s); }
constexpr Spin spin_from_bit(Bit bit) { return bit ? Spin::minus : Spin::plus; }
constexpr Bit bit_from_spin(Spin s) { return s == Spin::minus ? 1 : 0; }
constexpr Spin operator-(Spin s) { return s == Spin::plus ? Spin::minus : Spin::plus; }

/// Throws DomainError unless v is exactly +1 or -1.
Spin spin_from_int(int v);

/// Throws DomainError unless v is exactly 0 or 1.
Bit checked_bit(int v);

/// Packed bit array, least significant bit of word 0 is index 0. Bits past
/// size() are kept at zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVector from_bits(std::span<const Bit> bits);
  /// Parses "0110..." with index 0 first.
  static BitVector from_string(std::string_view text);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Bit get(std::size_t i) const { return static_cast<Bit>((words_[i >> 6] >> (i & 63)) & 1U); }
  void set(std::size_t i, Bit v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  /// Zeroes the unused high bits of the last word.
  void clear_tail();

  std::size_t popcount() const;
  std::vector<Bit> to_bits() const;
  std::string to_string() const;

  BitVector& operator^=(const BitVector& other);
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

BitVector operator^(BitVector lhs, const BitVector& rhs);

/// Splits (v0, v1, v2, v3, ...) into the even half (v0, v2, ...) and the odd
/// half (v1, v3, ...). Writes into preallocated outputs of size in.size()/2.
void deinterleave(const BitVector& in, BitVector& even, BitVector& odd);

std::pair<BitVector, BitVector> deinterleave(const BitVector& in);

}  // namespace nonlocal

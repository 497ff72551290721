#include "nonlocal/bits.hpp"

#include <bit>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

// Gathers the 32 even-position bits of w into the low half.
constexpr std::uint64_t compress_even(std::uint64_t w) {
  w &= 0x5555555555555555ULL;
  w = (w | (w >> 1)) & 0x3333333333333333ULL;
  w = (w | (w >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
  w = (w | (w >> 4)) & 0x00FF00FF00FF00FFULL;
  w = (w | (w >> 8)) & 0x0000FFFF0000FFFFULL;
  w = (w | (w >> 16)) & 0x00000000FFFFFFFFULL;
  return w;
}

static_assert(compress_even(0b1010) == 0b00);
static_assert(compress_even(0b0101) == 0b11);
static_assert(compress_even(0x5555555555555555ULL) == 0xFFFFFFFFULL);

}  // namespace

Spin spin_from_int(int v) {
  if (v == 1) return Spin::plus;
  if (v == -1) return Spin::minus;
  throw DomainError("spin value must be +1 or -1, got " + std::to_string(v));
}

Bit checked_bit(int v) {
  if (v != 0 && v != 1) throw DomainError("bit value must be 0 or 1, got " + std::to_string(v));
  return static_cast<Bit>(v);
}

BitVector BitVector::from_bits(std::span<const Bit> bits) {
  BitVector out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out.set(i, checked_bit(bits[i]));
  return out;
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') throw DomainError("bit string may only contain 0 and 1");
    out.set(i, text[i] == '1' ? 1 : 0);
  }
  return out;
}

void BitVector::clear_tail() {
  const std::size_t used = size_ & 63;
  if (used != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << used) - 1;
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (const auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<Bit> BitVector::to_bits() const {
  std::vector<Bit> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = get(i);
  return out;
}

std::string BitVector::to_string() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) out[i] = get(i) ? '1' : '0';
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) throw DomainError("BitVector xor: size mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector operator^(BitVector lhs, const BitVector& rhs) {
  lhs ^= rhs;
  return lhs;
}

void deinterleave(const BitVector& in, BitVector& even, BitVector& odd) {
  if (in.size() % 2 != 0) throw DomainError("deinterleave: odd length");
  const std::size_t half = in.size() / 2;
  if (even.size() != half || odd.size() != half) throw DomainError("deinterleave: output size");

  const auto src = in.words();
  auto ev = even.words();
  auto od = odd.words();
  for (std::size_t w = 0; w < ev.size(); ++w) {
    const std::uint64_t lo = src[2 * w];
    const std::uint64_t hi = 2 * w + 1 < src.size() ? src[2 * w + 1] : 0;
    ev[w] = compress_even(lo) | (compress_even(hi) << 32);
    od[w] = compress_even(lo >> 1) | (compress_even(hi >> 1) << 32);
  }
  even.clear_tail();
  odd.clear_tail();
}

std::pair<BitVector, BitVector> deinterleave(const BitVector& in) {
  BitVector even(in.size() / 2);
  BitVector odd(in.size() / 2);
  deinterleave(in, even, odd);
  return {std::move(even), std::move(odd)};
}

}  // namespace nonlocal

#pragma once

// Oblivious transfer over a binary tree of box pairs (van Dam's wiring).
//
// Indexing used throughout: levels run 1..n bottom-up on Alice's side and
// level k holds boxes j = 1..2^(n-k). Level-1 box j reads Alice's bits
// (x_{2j-2}, x_{2j-1}); level-k box j reads the outputs of boxes 2j-1 and 2j
// of level k-1. Each box applies f(q1, q2) = q1 xor A_{q1 xor q2}. Bob, asking
// for address i = i_{n-1}...i_0, feeds bit i_{k-1} into one box per level,
// walking down from j_n = 1 by j_{k-1} = 2 j_k - 1 + i_{k-1}; with 0-based box
// numbers that is simply box (i >> k) on level k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nonlocal/bits.hpp"
#include "nonlocal/channel.hpp"
#include "nonlocal/nsbox.hpp"
#include "nonlocal/random.hpp"

namespace nonlocal {

/// Deepest tree the simulator will build (2^24 source bits per run).
inline constexpr unsigned kMaxSimulatedLevels = 24;

struct VanDamConfig {
  unsigned levels = 1;   ///< n: 2^n source bits, 2^n - 1 box pairs
  double c = 1.0;        ///< Bell-CHSH correlation of every box pair
  double c_prime = 1.0;  ///< per-stage correlation of the classical link

  /// Throws DomainError on |c| > 1, |c'| > 1 or levels outside [1, kMaxSimulatedLevels].
  void validate() const;
  std::size_t bit_count() const { return std::size_t{1} << levels; }
  std::size_t box_count() const { return bit_count() - 1; }
};

class Address {
 public:
  /// Throws DomainError if index >= 2^levels.
  Address(std::uint64_t index, unsigned levels);

  std::uint64_t index() const { return index_; }
  unsigned levels() const { return levels_; }
  /// i_k, the k-th binary digit (k = 0 is least significant).
  Bit bit(unsigned k) const { return static_cast<Bit>((index_ >> k) & 1U); }

 private:
  std::uint64_t index_;
  unsigned levels_;
};

/// One-shot set of 2^n - 1 box pairs arranged by level. Records Alice's
/// inputs and outputs once she has wired them; Bob may then query one path.
class BoxTree {
 public:
  /// Throws DomainError if `box` fails the no-signaling check at 1e-12 (the
  /// two parties query at different times, which needs well-defined marginals).
  BoxTree(unsigned levels, const NSBoxPair& box);

  unsigned levels() const { return levels_; }
  std::size_t boxes_at(unsigned level) const { return std::size_t{1} << (levels_ - level); }
  std::size_t box_count() const { return (std::size_t{1} << levels_) - 1; }
  const NSBoxPair& box() const { return box_; }

  bool alice_done() const { return alice_done_; }
  bool bob_done() const { return bob_done_; }

  /// Alice's input / output at box j (1-based) of `level`; valid after alice_encode.
  Bit alice_input(unsigned level, std::size_t j) const;
  Bit alice_output(unsigned level, std::size_t j) const;
  struct BobQuery {
    Bit input = 0;
    Bit output = 0;
  };
  /// Bob's input / output at box j of `level`, if he queried it.
  std::optional<BobQuery> bob_record(unsigned level, std::size_t j) const;

  /// Discards every recorded query. Afterwards the tree is statistically a
  /// brand-new set of boxes; storage is kept.
  void renew();

 private:
  friend Bit alice_encode(const BitVector& bits, BoxTree& tree, RandomStream& rng);
  friend Bit bob_decode(Bit received, const Address& address, BoxTree& tree, RandomStream& rng);

  void check_position(unsigned level, std::size_t j) const;

  unsigned levels_;
  NSBoxPair box_;
  double alice_one_[2] = {0.5, 0.5};  // P(A = 1 | a)
  bool fair_alice_ = true;
  std::vector<BitVector> inputs_;   // per level, Alice's a
  std::vector<BitVector> outputs_;  // per level, Alice's A
  std::vector<BitVector> values_;   // per level, x^(k)_j = q1 xor A
  std::vector<BitVector> even_;
  std::vector<BitVector> odd_;
  std::vector<std::pair<std::size_t, BobQuery>> bob_path_;  // per level, 0-based box and query
  bool alice_done_ = false;
  bool bob_done_ = false;
};

/// Alice's recursive wiring. Queries every box exactly once and returns the
/// single level-n bit x^(n). Throws DomainError unless bits.size() == 2^n.
Bit alice_encode(const BitVector& bits, BoxTree& tree, RandomStream& rng);
Bit alice_encode(std::span<const Bit> bits, BoxTree& tree, RandomStream& rng);

/// Bob's decoder: received bit xor the n outputs of his path boxes. Requires
/// that Alice has encoded with this tree and that Bob has not used it yet.
Bit bob_decode(Bit received, const Address& address, BoxTree& tree, RandomStream& rng);

/// Classical link: n concatenated symmetric channels of correlation c'.
Bit classical_link(Bit wire, const VanDamConfig& cfg, RandomStream& rng);

struct ProtocolTranscript {
  unsigned levels = 0;
  double c = 0.0;
  double c_prime = 0.0;
  std::uint64_t address = 0;
  BitVector alice_bits;
  Bit wire_bit = 0;      ///< x^(n)
  Bit received_bit = 0;  ///< z, after the classical link
  std::optional<Bit> decoded;

  Bit target_bit() const { return alice_bits.get(address); }
  bool success() const { return decoded.has_value() && *decoded == target_bit(); }
};

/// Paired (x_i, y_i) over every address, one protocol repetition per address.
struct AddressSweep {
  std::vector<Spin> inputs;
  std::vector<Spin> decoded;
};

/// Reusable driver: owns one tree and renews it for every repetition, so each
/// run sees fresh boxes and fresh source bits.
class ProtocolRunner {
 public:
  ProtocolRunner(const VanDamConfig& cfg, const BernoulliSource& source);

  const VanDamConfig& config() const { return cfg_; }

  ProtocolTranscript run(const Address& address, RandomStream& rng);

  /// Same as run() but only returns (x_i, y_i).
  std::pair<Bit, Bit> run_target(std::uint64_t address, RandomStream& rng);

  /// All-addresses mode: 2^n independent repetitions, repetition i decoding address i.
  AddressSweep sweep(RandomStream& rng);

 private:
  VanDamConfig cfg_;
  BernoulliSource source_;
  BoxTree tree_;
  BitVector bits_;
};

ProtocolTranscript run_protocol(const VanDamConfig& cfg, const BernoulliSource& source,
                                const Address& address, RandomStream& rng);

/// All-addresses mode with full transcripts.
std::vector<ProtocolTranscript> run_protocol_all(const VanDamConfig& cfg,
                                                 const BernoulliSource& source, RandomStream& rng);

}  // namespace nonlocal

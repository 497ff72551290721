#include "nonlocal/vandam.hpp"

#include <string>

#include "nonlocal/errors.hpp"

namespace nonlocal {

void VanDamConfig::validate() const {
  if (levels < 1 || levels > kMaxSimulatedLevels) {
    throw DomainError("level count must lie in [1, " + std::to_string(kMaxSimulatedLevels) + "]");
  }
  if (!(c >= -1.0 && c <= 1.0)) throw DomainError("Bell-CHSH correlation must lie in [-1, 1]");
  if (!(c_prime >= -1.0 && c_prime <= 1.0)) {
    throw DomainError("classical link correlation must lie in [-1, 1]");
  }
}

Address::Address(std::uint64_t index, unsigned levels) : index_(index), levels_(levels) {
  if (levels >= 64 || index >= (std::uint64_t{1} << levels)) {
    throw DomainError("address " + std::to_string(index) + " out of range for " +
                      std::to_string(levels) + " levels");
  }
}

BoxTree::BoxTree(unsigned levels, const NSBoxPair& box) : levels_(levels), box_(box) {
  if (levels < 1 || levels > kMaxSimulatedLevels) {
    throw DomainError("box tree level count must lie in [1, " +
                      std::to_string(kMaxSimulatedLevels) + "]");
  }
  if (!no_signaling_check(box_, 1e-12).passed) {
    throw DomainError("box tree requires a no-signaling box");
  }
  for (Bit a = 0; a < 2; ++a) alice_one_[a] = box_.alice_marginal(1, a, 0);
  fair_alice_ = alice_one_[0] == 0.5 && alice_one_[1] == 0.5;

  for (unsigned k = 1; k <= levels_; ++k) {
    const std::size_t count = boxes_at(k);
    inputs_.emplace_back(count);
    outputs_.emplace_back(count);
    values_.emplace_back(count);
    even_.emplace_back(count);
    odd_.emplace_back(count);
  }
  bob_path_.resize(levels_);
}

void BoxTree::check_position(unsigned level, std::size_t j) const {
  if (level < 1 || level > levels_ || j < 1 || j > boxes_at(level)) {
    throw DomainError("box position out of range");
  }
}

Bit BoxTree::alice_input(unsigned level, std::size_t j) const {
  check_position(level, j);
  if (!alice_done_) throw std::logic_error("box tree: Alice has not queried her boxes");
  return inputs_[level - 1].get(j - 1);
}

Bit BoxTree::alice_output(unsigned level, std::size_t j) const {
  check_position(level, j);
  if (!alice_done_) throw std::logic_error("box tree: Alice has not queried her boxes");
  return outputs_[level - 1].get(j - 1);
}

std::optional<BoxTree::BobQuery> BoxTree::bob_record(unsigned level, std::size_t j) const {
  check_position(level, j);
  if (!bob_done_ || bob_path_[level - 1].first != j - 1) return std::nullopt;
  return bob_path_[level - 1].second;
}

void BoxTree::renew() {
  alice_done_ = false;
  bob_done_ = false;
}

Bit alice_encode(const BitVector& bits, BoxTree& tree, RandomStream& rng) {
  if (bits.size() != (std::size_t{1} << tree.levels_)) {
    throw DomainError("alice_encode: expected " + std::to_string(std::size_t{1} << tree.levels_) +
                      " bits, got " + std::to_string(bits.size()));
  }
  if (tree.alice_done_) throw std::logic_error("alice_encode: boxes already used");

  const BitVector* current = &bits;
  for (unsigned k = 1; k <= tree.levels_; ++k) {
    auto& even = tree.even_[k - 1];
    auto& odd = tree.odd_[k - 1];
    auto& in = tree.inputs_[k - 1];
    auto& out = tree.outputs_[k - 1];
    auto& val = tree.values_[k - 1];
    deinterleave(*current, even, odd);

    const auto ev = even.words();
    const auto od = odd.words();
    auto iw = in.words();
    for (std::size_t w = 0; w < iw.size(); ++w) iw[w] = ev[w] ^ od[w];

    if (tree.fair_alice_) {
      rng.fill_words(out.words());
      out.clear_tail();
    } else {
      for (std::size_t j = 0; j < in.size(); ++j) {
        out.set(j, rng.bernoulli(tree.alice_one_[in.get(j)]) ? 1 : 0);
      }
    }

    const auto ow = out.words();
    auto vw = val.words();
    for (std::size_t w = 0; w < vw.size(); ++w) vw[w] = ev[w] ^ ow[w];
    current = &val;
  }
  tree.alice_done_ = true;
  return current->get(0);
}

Bit alice_encode(std::span<const Bit> bits, BoxTree& tree, RandomStream& rng) {
  return alice_encode(BitVector::from_bits(bits), tree, rng);
}

Bit bob_decode(Bit received, const Address& address, BoxTree& tree, RandomStream& rng) {
  if (address.levels() != tree.levels_) throw DomainError("bob_decode: address depth mismatch");
  if (!tree.alice_done_) throw std::logic_error("bob_decode: Alice has not encoded with this tree");
  if (tree.bob_done_) throw std::logic_error("bob_decode: boxes already used");

  Bit y = checked_bit(received);
  for (unsigned k = 1; k <= tree.levels_; ++k) {
    const std::size_t idx = static_cast<std::size_t>(address.index() >> k);
    const Bit b = address.bit(k - 1);
    const Bit a = tree.inputs_[k - 1].get(idx);
    const Bit A = tree.outputs_[k - 1].get(idx);
    const auto& box = tree.box_;
    const double joint_one = box.prob(A, 1, a, b);
    const double given = box.prob(A, 0, a, b) + joint_one;
    const Bit B = rng.bernoulli(joint_one / given) ? 1 : 0;
    tree.bob_path_[k - 1] = {idx, BoxTree::BobQuery{b, B}};
    y ^= B;
  }
  tree.bob_done_ = true;
  return y;
}

Bit classical_link(Bit wire, const VanDamConfig& cfg, RandomStream& rng) {
  const SymmetricBinaryChannel stage(cfg.c_prime);
  Bit z = wire;
  for (unsigned k = 0; k < cfg.levels; ++k) z = stage.transmit_bit(z, rng);
  return z;
}

namespace {

VanDamConfig validated(const VanDamConfig& cfg) {
  cfg.validate();
  return cfg;
}

}  // namespace

ProtocolRunner::ProtocolRunner(const VanDamConfig& cfg, const BernoulliSource& source)
    : cfg_(validated(cfg)),
      source_(source),
      tree_(cfg.levels, make_isotropic_box(cfg.c)),
      bits_(cfg.bit_count()) {}

ProtocolTranscript ProtocolRunner::run(const Address& address, RandomStream& rng) {
  if (address.levels() != cfg_.levels) throw DomainError("run_protocol: address depth mismatch");
  tree_.renew();
  ProtocolTranscript t;
  t.levels = cfg_.levels;
  t.c = cfg_.c;
  t.c_prime = cfg_.c_prime;
  t.address = address.index();
  t.alice_bits = source_.draw_bits(cfg_.bit_count(), rng);
  t.wire_bit = alice_encode(t.alice_bits, tree_, rng);
  t.received_bit = classical_link(t.wire_bit, cfg_, rng);
  t.decoded = bob_decode(t.received_bit, address, tree_, rng);
  return t;
}

std::pair<Bit, Bit> ProtocolRunner::run_target(std::uint64_t address, RandomStream& rng) {
  const Address addr(address, cfg_.levels);
  tree_.renew();
  source_.fill_bits(bits_, rng);
  const Bit wire = alice_encode(bits_, tree_, rng);
  const Bit z = classical_link(wire, cfg_, rng);
  const Bit y = bob_decode(z, addr, tree_, rng);
  return {bits_.get(address), y};
}

AddressSweep ProtocolRunner::sweep(RandomStream& rng) {
  AddressSweep out;
  const std::size_t m = cfg_.bit_count();
  out.inputs.reserve(m);
  out.decoded.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto [x, y] = run_target(i, rng);
    out.inputs.push_back(spin_from_bit(x));
    out.decoded.push_back(spin_from_bit(y));
  }
  return out;
}

ProtocolTranscript run_protocol(const VanDamConfig& cfg, const BernoulliSource& source,
                                const Address& address, RandomStream& rng) {
  ProtocolRunner runner(cfg, source);
  return runner.run(address, rng);
}

std::vector<ProtocolTranscript> run_protocol_all(const VanDamConfig& cfg,
                                                 const BernoulliSource& source, RandomStream& rng) {
  ProtocolRunner runner(cfg, source);
  std::vector<ProtocolTranscript> out;
  out.reserve(cfg.bit_count());
  for (std::size_t i = 0; i < cfg.bit_count(); ++i) out.push_back(runner.run(Address(i, cfg.levels), rng));
  return out;
}

}  // namespace nonlocal

#include "nonlocal/random.hpp"

namespace nonlocal {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t key, std::uint64_t index) {
  return mix64(mix64(mix64(master_seed) ^ key) + index);
}

std::uint64_t stream_key(std::string_view name, std::uint64_t discriminator) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return mix64(h ^ mix64(discriminator));
}

}  // namespace nonlocal

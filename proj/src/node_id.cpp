#include "kadcon/node_id.hpp"

#include <stdexcept>

namespace kadcon {

namespace {
int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

NodeId NodeId::from_hex(const std::string& hex, int bits) {
  NodeId id;
  id.bits_ = check_bits(bits);
  id.nbytes_ = bytes_for(bits);
  size_t want = static_cast<size_t>((bits + 3) / 4);
  if (hex.size() != want)
    throw ConfigError("hex id '" + hex + "' must have exactly " + std::to_string(want) +
                      " digits for " + std::to_string(bits) + " bits");
  // Digits map to the low 4*want bits; with bits % 8 != 0 the first digit
  // shares a byte with padding.
  int nibble = 2 * id.nbytes_ - static_cast<int>(want);
  for (char c : hex) {
    int d = hex_digit(c);
    if (d < 0) throw ConfigError("invalid hex digit in id '" + hex + "'");
    int byte = nibble / 2;
    if (nibble % 2 == 0)
      id.bytes_[byte] |= static_cast<uint8_t>(d << 4);
    else
      id.bytes_[byte] |= static_cast<uint8_t>(d);
    ++nibble;
  }
  id.mask_top();
  return id;
}

std::string NodeId::to_hex() const {
  static const char* digits = "0123456789abcdef";
  int want = (bits_ + 3) / 4;
  std::string out;
  out.reserve(static_cast<size_t>(want));
  int nibble = 2 * nbytes_ - want;
  for (int i = 0; i < want; ++i, ++nibble) {
    uint8_t byte = bytes_[nibble / 2];
    out.push_back(digits[(nibble % 2 == 0) ? (byte >> 4) : (byte & 0xf)]);
  }
  return out;
}

Distance xor_distance(const NodeId& a, const NodeId& b) {
  NodeId::require_same_width(a, b);
  NodeId raw;
  raw.bits_ = a.bits_;
  raw.nbytes_ = a.nbytes_;
  for (int i = 0; i < a.nbytes_; ++i) raw.bytes_[i] = a.bytes_[i] ^ b.bytes_[i];
  return Distance(raw);
}

int bucket_index(const NodeId& self, const NodeId& other) {
  Distance d = xor_distance(self, other);
  if (d.is_zero())
    throw std::invalid_argument("bucket_index: a node never stores itself");
  return d.highest_bit();
}

NodeId random_id(Rng& rng, int bits) {
  NodeId id;
  id.bits_ = NodeId::check_bits(bits);
  id.nbytes_ = NodeId::bytes_for(bits);
  for (int i = 0; i < id.nbytes_; i += 8) {
    uint64_t word = rng();
    int take = id.nbytes_ - i < 8 ? id.nbytes_ - i : 8;
    for (int j = 0; j < take; ++j)
      id.bytes_[i + j] = static_cast<uint8_t>(word >> (8 * (7 - j)));
  }
  id.mask_top();
  return id;
}

NodeId random_id_in_bucket(const NodeId& self, int index, Rng& rng) {
  if (index < 0 || index >= self.bits())
    throw std::invalid_argument("bucket index " + std::to_string(index) +
                                " out of range for " + std::to_string(self.bits()) + "-bit ids");
  // Distance in [2^index, 2^(index+1)) means: bits above `index` equal
  // self's, bit `index` flipped, bits below uniform.
  NodeId id = random_id(rng, self.bits());
  int keep_from = index + 1;  // bit positions >= keep_from copied from self
  for (int bit = keep_from; bit < self.bits(); ++bit) {
    int byte = id.nbytes_ - 1 - bit / 8;
    uint8_t mask = static_cast<uint8_t>(1u << (bit % 8));
    id.bytes_[byte] = static_cast<uint8_t>((id.bytes_[byte] & ~mask) | (self.bytes_[byte] & mask));
  }
  int byte = id.nbytes_ - 1 - index / 8;
  uint8_t mask = static_cast<uint8_t>(1u << (index % 8));
  id.bytes_[byte] = static_cast<uint8_t>((id.bytes_[byte] & ~mask) | (~self.bytes_[byte] & mask));
  return id;
}

}  // namespace kadcon

#ifndef KADCON_NODE_ID_HPP
#define KADCON_NODE_ID_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kadcon/rng.hpp"

namespace kadcon {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NodeId;
class Distance;
Distance xor_distance(const NodeId& a, const NodeId& b);

// Fixed-width b-bit identifier, stored big-endian so that byte-wise
// comparison equals numeric comparison. The width is set per run; ids of
// different widths never mix (that is a configuration error, not a
// coercion). Widths up to kMaxBits are supported, which covers the standard
// 160-bit ids, the 80-bit variant, and the tiny widths used in tests.
class NodeId {
 public:
  static constexpr int kMaxBits = 256;

  NodeId() : bits_(0), nbytes_(0) {}

  // Value constructor for small ids (tests, hand-built topologies).
  NodeId(uint64_t value, int bits) : bits_(check_bits(bits)), nbytes_(bytes_for(bits)) {
    if (bits < 64 && bits > 0 && (value >> bits) != 0)
      throw ConfigError("NodeId value does not fit in " + std::to_string(bits) + " bits");
    for (int i = 0; i < nbytes_; ++i) {
      int shift = 8 * (nbytes_ - 1 - i);
      bytes_[i] = shift < 64 ? static_cast<uint8_t>(value >> shift) : 0;
    }
  }

  static NodeId from_bytes(const uint8_t* data, int bits) {
    NodeId id;
    id.bits_ = check_bits(bits);
    id.nbytes_ = bytes_for(bits);
    std::memcpy(id.bytes_.data(), data, static_cast<size_t>(id.nbytes_));
    id.mask_top();
    return id;
  }

  // Lowercase hex, zero-padded to ceil(bits/4) digits. This is the textual
  // form used in snapshot files.
  static NodeId from_hex(const std::string& hex, int bits);
  std::string to_hex() const;

  int bits() const { return bits_; }
  int nbytes() const { return nbytes_; }
  const uint8_t* data() const { return bytes_.data(); }

  // Low 64 bits as an integer; exact for bits() <= 64.
  uint64_t low64() const {
    uint64_t v = 0;
    int take = nbytes_ < 8 ? nbytes_ : 8;
    for (int i = nbytes_ - take; i < nbytes_; ++i) v = (v << 8) | bytes_[i];
    return v;
  }

  bool is_zero() const {
    for (int i = 0; i < nbytes_; ++i)
      if (bytes_[i] != 0) return false;
    return true;
  }

  // Index of the highest set bit (0-based from the least significant bit).
  // Undefined for zero values; callers check.
  int highest_bit() const {
    for (int i = 0; i < nbytes_; ++i) {
      if (bytes_[i] != 0) {
        int msb_in_byte = 31 - __builtin_clz(static_cast<unsigned>(bytes_[i]));
        return 8 * (nbytes_ - 1 - i) + msb_in_byte;
      }
    }
    return -1;
  }

  friend bool operator==(const NodeId& a, const NodeId& b) {
    return a.bits_ == b.bits_ &&
           std::memcmp(a.bytes_.data(), b.bytes_.data(), static_cast<size_t>(a.nbytes_)) == 0;
  }

  // Numeric order. Comparing ids of different widths is a configuration
  // error surfaced by require_same_width(); operator< assumes equal widths
  // and is used on validated collections.
  friend bool operator<(const NodeId& a, const NodeId& b) {
    return std::memcmp(a.bytes_.data(), b.bytes_.data(), static_cast<size_t>(a.nbytes_)) < 0;
  }
  friend bool operator>(const NodeId& a, const NodeId& b) { return b < a; }
  friend bool operator!=(const NodeId& a, const NodeId& b) { return !(a == b); }

  static void require_same_width(const NodeId& a, const NodeId& b) {
    if (a.bits_ != b.bits_)
      throw ConfigError("mixed id widths: " + std::to_string(a.bits_) + " vs " +
                        std::to_string(b.bits_) + " bits");
  }

 private:
  static int check_bits(int bits) {
    if (bits < 1 || bits > kMaxBits)
      throw ConfigError("id bit-length must be in [1, " + std::to_string(kMaxBits) + "]");
    return bits;
  }
  static int bytes_for(int bits) { return (bits + 7) / 8; }
  void mask_top() {
    int extra = 8 * nbytes_ - bits_;
    if (extra > 0) bytes_[0] &= static_cast<uint8_t>(0xffu >> extra);
  }

  std::array<uint8_t, kMaxBits / 8> bytes_{};
  int16_t bits_;
  int16_t nbytes_;

  friend class Distance;
  friend Distance xor_distance(const NodeId& a, const NodeId& b);
  friend NodeId random_id(Rng& rng, int bits);
  friend NodeId random_id_in_bucket(const NodeId& self, int index, Rng& rng);
};

// XOR distance between two equal-width ids, ordered as an unsigned integer.
class Distance {
 public:
  Distance() : id_() {}

  int bits() const { return id_.bits(); }
  bool is_zero() const { return id_.is_zero(); }
  uint64_t low64() const { return id_.low64(); }
  int highest_bit() const { return id_.highest_bit(); }
  const NodeId& as_id() const { return id_; }

  friend bool operator==(const Distance& a, const Distance& b) { return a.id_ == b.id_; }
  friend bool operator!=(const Distance& a, const Distance& b) { return !(a == b); }
  friend bool operator<(const Distance& a, const Distance& b) { return a.id_ < b.id_; }
  friend bool operator>(const Distance& a, const Distance& b) { return b < a; }
  friend bool operator<=(const Distance& a, const Distance& b) { return !(b < a); }

 private:
  explicit Distance(NodeId raw) : id_(raw) {}
  NodeId id_;
  friend Distance xor_distance(const NodeId& a, const NodeId& b);
};

Distance xor_distance(const NodeId& a, const NodeId& b);

// The unique i with 2^i <= xor_distance(self, other) < 2^(i+1).
// Throws std::invalid_argument when self == other.
int bucket_index(const NodeId& self, const NodeId& other);

// Uniform draw over [0, 2^bits). Collisions with live ids are the caller's
// concern (reject and redraw).
NodeId random_id(Rng& rng, int bits);

// Uniform draw over the ids whose distance from self falls in
// [2^index, 2^(index+1)).
NodeId random_id_in_bucket(const NodeId& self, int index, Rng& rng);

}  // namespace kadcon

#endif

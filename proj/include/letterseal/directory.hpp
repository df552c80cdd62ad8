#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "letterseal/bytes.hpp"
#include "letterseal/crypto.hpp"

namespace letterseal {

// Append-only public key registry. Kids are handed out sequentially from 1.
class KeyDirectory {
 public:
  std::uint32_t register_key(const GroupElement& pub, const std::string& owner);
  GroupElement lookup(std::uint32_t kid) const;  // throws NotFound
  std::string owner_of(std::uint32_t kid) const;
  std::size_t size() const;

 private:
  struct Entry {
    GroupElement pub;
    std::string owner;
  };
  mutable std::mutex mu_;
  std::map<std::uint32_t, Entry> entries_;
  std::uint32_t next_kid_ = 1;
};

namespace relay {
struct Honest {};
// Ordinals count accepted envelopes from 1.
struct Replay {
  std::uint32_t ordinal = 1;
  std::uint32_t copies = 1;
};
struct Drop {
  std::set<std::uint32_t> ordinals;
};
// Buffers permutation.size() envelopes, then releases them so that output
// slot k carries buffered envelope permutation[k].
struct Reorder {
  std::vector<std::size_t> permutation;
};
}  // namespace relay

using RelayBehavior = std::variant<relay::Honest, relay::Replay, relay::Drop, relay::Reorder>;

// Store-and-forward relay. Never alters envelope bytes; deliveries are
// queued per recipient.
class Relay {
 public:
  explicit Relay(RelayBehavior behavior = relay::Honest{});

  // Validates that the bytes decode, then returns what is released now.
  std::vector<Bytes> relay(const Bytes& envelope);
  // Releases anything still held by a Reorder window.
  std::vector<Bytes> flush();

  void post(const std::string& recipient, const Bytes& envelope);
  std::vector<Bytes> drain(const std::string& recipient);
  void flush_to(const std::string& recipient);

 private:
  std::vector<Bytes> relay_locked(const Bytes& envelope);

  mutable std::mutex mu_;
  RelayBehavior behavior_;
  std::uint32_t ordinal_ = 0;
  std::vector<Bytes> window_;
  std::map<std::string, std::deque<Bytes>> queues_;
};

}  // namespace letterseal

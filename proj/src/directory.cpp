#include "letterseal/directory.hpp"

#include <algorithm>

#include "letterseal/error.hpp"
#include "letterseal/wire.hpp"

namespace letterseal {

std::uint32_t KeyDirectory::register_key(const GroupElement& pub, const std::string& owner) {
  std::lock_guard lock(mu_);
  const auto kid = next_kid_++;
  entries_.emplace(kid, Entry{pub, owner});
  return kid;
}

GroupElement KeyDirectory::lookup(std::uint32_t kid) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(kid);
  if (it == entries_.end()) fail(ErrorCode::NotFound, "kid " + std::to_string(kid));
  return it->second.pub;
}

std::string KeyDirectory::owner_of(std::uint32_t kid) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(kid);
  if (it == entries_.end()) fail(ErrorCode::NotFound, "kid " + std::to_string(kid));
  return it->second.owner;
}

std::size_t KeyDirectory::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

Relay::Relay(RelayBehavior behavior) : behavior_(std::move(behavior)) {
  if (auto* r = std::get_if<relay::Reorder>(&behavior_)) {
    auto sorted = r->permutation;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (sorted[k] != k) fail(ErrorCode::InvalidLength, "reorder window is not a permutation");
    }
  }
}

std::vector<Bytes> Relay::relay(const Bytes& envelope) {
  std::lock_guard lock(mu_);
  return relay_locked(envelope);
}

std::vector<Bytes> Relay::relay_locked(const Bytes& envelope) {
  (void)decode_envelope(envelope);
  const auto ordinal = ++ordinal_;
  std::vector<Bytes> out;
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, relay::Honest>) {
          out.push_back(envelope);
        } else if constexpr (std::is_same_v<B, relay::Replay>) {
          out.push_back(envelope);
          if (ordinal == b.ordinal) out.insert(out.end(), b.copies, envelope);
        } else if constexpr (std::is_same_v<B, relay::Drop>) {
          if (!b.ordinals.contains(ordinal)) out.push_back(envelope);
        } else {
          window_.push_back(envelope);
          if (window_.size() == b.permutation.size()) {
            for (auto idx : b.permutation) out.push_back(window_[idx]);
            window_.clear();
          }
        }
      },
      behavior_);
  return out;
}

std::vector<Bytes> Relay::flush() {
  std::lock_guard lock(mu_);
  std::vector<Bytes> out;
  out.swap(window_);
  return out;
}

void Relay::post(const std::string& recipient, const Bytes& envelope) {
  std::lock_guard lock(mu_);
  auto released = relay_locked(envelope);
  auto& q = queues_[recipient];
  for (auto& e : released) q.push_back(std::move(e));
}

std::vector<Bytes> Relay::drain(const std::string& recipient) {
  std::lock_guard lock(mu_);
  std::vector<Bytes> out;
  auto it = queues_.find(recipient);
  if (it == queues_.end()) return out;
  out.assign(std::make_move_iterator(it->second.begin()), std::make_move_iterator(it->second.end()));
  it->second.clear();
  return out;
}

void Relay::flush_to(const std::string& recipient) {
  std::lock_guard lock(mu_);
  auto& q = queues_[recipient];
  for (auto& e : window_) q.push_back(std::move(e));
  window_.clear();
}

}  // namespace letterseal

#include "ocix/interner.hpp"

#include <functional>
#include <stdexcept>

namespace ocix {
namespace {

std::size_t hash_of(std::string_view s) { return std::hash<std::string_view>{}(s); }

}  // namespace

Interner::Interner() : offsets_{0}, slots_(16, kNone) {}

std::size_t Interner::slot_for(std::string_view s, std::size_t hash) const {
  std::size_t mask = slots_.size() - 1;
  for (std::size_t i = hash & mask;; i = (i + 1) & mask) {
    Id id = slots_[i];
    if (id == kNone || view(id) == s) return i;
  }
}

void Interner::grow() {
  std::vector<Id> next(slots_.size() * 2, kNone);
  std::size_t mask = next.size() - 1;
  for (Id id : slots_) {
    if (id == kNone) continue;
    std::size_t i = hash_of(view(id)) & mask;
    while (next[i] != kNone) i = (i + 1) & mask;
    next[i] = id;
  }
  slots_.swap(next);
}

Interner::Id Interner::intern(std::string_view s) {
  std::size_t h = hash_of(s);
  std::size_t slot = slot_for(s, h);
  if (slots_[slot] != kNone) return slots_[slot];
  if (size() >= kNone - 1) throw std::length_error("interner full");
  Id id = static_cast<Id>(size());
  pool_.append(s);
  offsets_.push_back(pool_.size());
  slots_[slot] = id;
  // Load factor <= 1/2.
  if (2 * size() > slots_.size()) grow();
  return id;
}

std::optional<Interner::Id> Interner::find(std::string_view s) const {
  Id id = slots_[slot_for(s, hash_of(s))];
  if (id == kNone) return std::nullopt;
  return id;
}

std::size_t Interner::bytes() const noexcept {
  return pool_.capacity() + offsets_.capacity() * sizeof(std::uint64_t) + slots_.capacity() * sizeof(Id);
}

void Interner::reserve(std::size_t strings, std::size_t chars) {
  pool_.reserve(chars);
  offsets_.reserve(strings + 1);
  while (slots_.size() < 2 * strings) grow();
}

}  // namespace ocix

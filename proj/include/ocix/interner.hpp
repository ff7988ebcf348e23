#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocix {

// Append-only string dictionary. Strings live back to back in one buffer and
// are addressed by dense 32-bit ids; lookup is open addressing over the ids.
class Interner {
 public:
  using Id = std::uint32_t;
  static constexpr Id kNone = 0xffffffffu;

  Interner();

  Id intern(std::string_view s);
  std::optional<Id> find(std::string_view s) const;
  std::string_view view(Id id) const noexcept {
    return std::string_view(pool_).substr(offsets_[id], offsets_[id + 1] - offsets_[id]);
  }
  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t bytes() const noexcept;

  void reserve(std::size_t strings, std::size_t chars);

 private:
  std::size_t slot_for(std::string_view s, std::size_t hash) const;
  void grow();

  std::string pool_;
  std::vector<std::uint64_t> offsets_;
  std::vector<Id> slots_;
};

}  // namespace ocix

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "laxkit/scalar.hpp"

namespace laxkit {

/// A finite, ordered set of distinct identifiers. Matrices index by position.
class Carrier {
 public:
  Carrier() = default;

  explicit Carrier(std::vector<std::string> ids) : ids_(std::move(ids)) {
    index_.reserve(ids_.size());
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!index_.emplace(ids_[i], i).second) {
        throw StructureError("duplicate carrier element '" + ids_[i] + "'");
      }
    }
  }

  /// The index carrier {first, ..., first+n-1} rendered as decimal ids.
  static Carrier indices(std::size_t n, std::size_t first = 1) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(first + i));
    return Carrier(std::move(ids));
  }

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<std::size_t> index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t at(const std::string& id) const {
    auto idx = index_of(id);
    if (!idx) throw StructureError("unknown element '" + id + "'");
    return *idx;
  }

  friend bool operator==(const Carrier& a, const Carrier& b) { return a.ids_ == b.ids_; }

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace laxkit

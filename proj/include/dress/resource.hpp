#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dress {

using Tick = std::int64_t;
using TaskId = std::int64_t;
using JobId = std::int64_t;
using ServerId = std::int32_t;

// k-dimensional nonnegative resource quantity. Component 0 is memory in
// container units; a server's component-0 capacity is its container slot
// count.
class ResourceVector {
 public:
  ResourceVector() = default;
  explicit ResourceVector(std::vector<std::int64_t> amounts);
  ResourceVector(std::initializer_list<std::int64_t> amounts);

  static ResourceVector zeros(std::size_t k) {
    return ResourceVector(std::vector<std::int64_t>(k, 0));
  }

  std::size_t size() const { return amounts_.size(); }
  std::int64_t operator[](std::size_t p) const { return amounts_[p]; }
  const std::vector<std::int64_t>& amounts() const { return amounts_; }

  // Componentwise <=. Throws a configuration error on dimension mismatch.
  bool fits_within(const ResourceVector& limit) const;

  ResourceVector& operator+=(const ResourceVector& other);
  ResourceVector& operator-=(const ResourceVector& other);
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
    return a += b;
  }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) {
    return a -= b;
  }
  bool operator==(const ResourceVector&) const = default;

  std::string to_string() const;

 private:
  void check_same_size(const ResourceVector& other) const;

  std::vector<std::int64_t> amounts_;
};

}  // namespace dress

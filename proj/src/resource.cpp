#include "dress/resource.hpp"

#include "dress/error.hpp"

namespace dress {

ResourceVector::ResourceVector(std::vector<std::int64_t> amounts)
    : amounts_(std::move(amounts)) {
  for (auto a : amounts_) {
    if (a < 0) throw config_error("resource amounts must be nonnegative");
  }
}

ResourceVector::ResourceVector(std::initializer_list<std::int64_t> amounts)
    : ResourceVector(std::vector<std::int64_t>(amounts)) {}

void ResourceVector::check_same_size(const ResourceVector& other) const {
  if (amounts_.size() != other.amounts_.size()) {
    throw config_error("resource dimension mismatch: " + to_string() +
                       " vs " + other.to_string());
  }
}

bool ResourceVector::fits_within(const ResourceVector& limit) const {
  check_same_size(limit);
  for (std::size_t p = 0; p < amounts_.size(); ++p) {
    if (amounts_[p] > limit.amounts_[p]) return false;
  }
  return true;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  check_same_size(other);
  for (std::size_t p = 0; p < amounts_.size(); ++p) {
    amounts_[p] += other.amounts_[p];
  }
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& other) {
  check_same_size(other);
  for (std::size_t p = 0; p < amounts_.size(); ++p) {
    amounts_[p] -= other.amounts_[p];
    if (amounts_[p] < 0) {
      throw invariant_error("resource amount went negative");
    }
  }
  return *this;
}

std::string ResourceVector::to_string() const {
  std::string out = "(";
  for (std::size_t p = 0; p < amounts_.size(); ++p) {
    if (p) out += ",";
    out += std::to_string(amounts_[p]);
  }
  return out + ")";
}

}  // namespace dress

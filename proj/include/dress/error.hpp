#pragma once

#include <stdexcept>
#include <string>

namespace dress {

enum class ErrorKind {
  kConfig,      // inconsistent dimensions or parameters
  kParse,       // scenario / trace file violates its schema
  kLifecycle,   // illegal container state transition
  kInvariant,   // scheduler bug: infeasible grant or broken accounting
  kDeadlock,    // pending work with nothing able to make progress
  kGeneration,  // workload generator asked for an infeasible scenario
  kIo,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error config_error(const std::string& what) {
  return Error(ErrorKind::kConfig, what);
}
inline Error parse_error(const std::string& path, const std::string& what) {
  return Error(ErrorKind::kParse, path + ": " + what);
}
inline Error invariant_error(const std::string& what) {
  return Error(ErrorKind::kInvariant, what);
}

}  // namespace dress

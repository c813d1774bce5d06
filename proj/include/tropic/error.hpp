#pragma once

#include <stdexcept>
#include <string>

namespace tropic {

// All invariant violations and bad inputs surface as TropicError with a
// human-readable message naming the offending object.
class TropicError : public std::runtime_error {
public:
  explicit TropicError(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw TropicError(msg); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

}  // namespace tropic

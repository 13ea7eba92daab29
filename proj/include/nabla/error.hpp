#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nabla {

enum class ErrorKind {
  Syntax,            // malformed input text
  Type,              // element / formula ill-typed for the functor
  Carrier,           // value outside the declared carrier
  NotFinitary,       // enumeration demanded of a Bag/Dist functor
  NotEnumerable,     // operation has no finite answer for this functor
  EnumerationLimit,  // configured element budget exceeded
  UnknownState,
  UnknownVariable,
};

class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorKind kind, const std::string& msg, std::size_t pos = npos)
      : std::runtime_error(pos == npos ? msg : msg + " at position " + std::to_string(pos)),
        kind_(kind),
        pos_(pos) {}

  ErrorKind kind() const { return kind_; }
  std::size_t position() const { return pos_; }

 private:
  ErrorKind kind_;
  std::size_t pos_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg,
                              std::size_t pos = Error::npos) {
  throw Error(kind, msg, pos);
}

// Element budget shared by one top-level operation and everything it spawns.
// Charged once per generated element; trips EnumerationLimit when exhausted.
struct Budget {
  std::uint64_t limit;
  std::uint64_t used = 0;

  explicit Budget(std::uint64_t limit = 1000000) : limit(limit) {}

  void charge(std::uint64_t n = 1) {
    used += n;
    if (used > limit)
      fail(ErrorKind::EnumerationLimit,
           "enumeration limit of " + std::to_string(limit) + " elements exceeded");
  }
};

}  // namespace nabla

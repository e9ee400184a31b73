#pragma once

#include <stdexcept>
#include <string>

namespace boolcx {

// Thrown when an input exceeds a configured size limit of an engine.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what_limit, long requested, long cap)
      : std::runtime_error(what_limit + ": requested " + std::to_string(requested) +
                           " exceeds cap " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}

  [[nodiscard]] long requested() const { return requested_; }
  [[nodiscard]] long cap() const { return cap_; }

 private:
  long requested_;
  long cap_;
};

}  // namespace boolcx

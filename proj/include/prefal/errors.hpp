#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prefal {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed DSL input or invalid run configuration.
class parse_error : public error {
 public:
  using error::error;
};

/// The greedy unbordered-prefix factorization found no matching piece.
/// Carries the stream position where no scanned prefix matched.
class stall_error : public error {
 public:
  stall_error(std::size_t position, const std::string& what)
      : error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A code table admitted two distinct parses of the same word.
class decode_error : public error {
 public:
  using error::error;
};

}  // namespace prefal

#pragma once

#include <stdexcept>
#include <string>

namespace amalg {

// Input document is malformed: bad JSON shape, unparsable number, or a
// described object violating its own construction invariants. CLI exit 2.
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A well-formed request applied outside an operation's domain (wrong space
// kind, missing membership, mismatched shapes). CLI exit 3.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A cross-check the library performs on its own results failed; always a
// bug, never user error. CLI exit 4.
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The const char* overloads keep literal messages free of any work on the
// success path; the std::string overloads serve call sites that build a
// contextual message.
inline void require(bool cond, const char* msg) {
  if (!cond) throw PreconditionError(msg);
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw PreconditionError(msg);
}

inline void check_internal(bool cond, const char* msg) {
  if (!cond) throw InternalError(msg);
}

inline void check_internal(bool cond, const std::string& msg) {
  if (!cond) throw InternalError(msg);
}

}  // namespace amalg

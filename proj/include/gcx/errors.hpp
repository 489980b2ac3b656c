#ifndef GCX_ERRORS_HPP
#define GCX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gcx {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range caller input (bad grammar, degree mismatch, ...).
class input_error : public error {
public:
  using error::error;
};

/// A group whose closure exceeds the enumeration cap.
class group_too_large : public error {
public:
  using error::error;
};

/// The factor set of a source did not stabilize below the prefix cap.
class stabilization_error : public error {
public:
  using error::error;
};

/// A theory-backed invariant failed at runtime. Always a bug.
class internal_fault : public error {
public:
  using error::error;
};

} // namespace gcx

#endif // GCX_ERRORS_HPP

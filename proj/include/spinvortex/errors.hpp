#pragma once

#include <stdexcept>
#include <string>

namespace spinvortex {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad parameters, bad config).
class invalid_input : public error {
public:
  using error::error;
};

/// Grid too coarse for the requested wavenumber or carrier.
class sampling_error : public invalid_input {
public:
  using invalid_input::invalid_input;
};

/// Inputs were valid but the computation cannot produce a meaningful answer.
class numerical_failure : public error {
public:
  using error::error;
};

class degenerate_field : public numerical_failure {
public:
  using numerical_failure::numerical_failure;
};

class ambiguous_charge : public numerical_failure {
public:
  using numerical_failure::numerical_failure;
};

class singular_operator : public numerical_failure {
public:
  using numerical_failure::numerical_failure;
};

namespace detail {

inline void require(bool condition, const std::string& what) {
  if (!condition) throw invalid_input(what);
}

} // namespace detail
} // namespace spinvortex

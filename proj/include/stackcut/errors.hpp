#pragma once

#include <stdexcept>
#include <string>

namespace stackcut {

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A conditional probability whose conditioning event was never observed.
class UndefinedConditional : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Input exceeds a solver's hard size cap.
class InstanceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace stackcut

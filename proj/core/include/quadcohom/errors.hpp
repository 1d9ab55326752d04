#pragma once

#include <stdexcept>
#include <string>

namespace quadcohom {

/// An exact identity that must hold by construction did not. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

/// The request is well-formed but outside what the computation supports.
class Unsupported : public std::domain_error {
 public:
  explicit Unsupported(const std::string& what) : std::domain_error(what) {}
};

}  // namespace quadcohom

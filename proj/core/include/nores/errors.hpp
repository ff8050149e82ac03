// Copyright 2026 The nores Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nores {

/// Raised when caller-supplied input violates an operation's precondition.
/// The message is prefixed with the module that rejected it, e.g.
/// "chain: L must be even".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string_view module, const std::string& message)
      : std::invalid_argument(std::string(module) + ": " + message),
        module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

inline void require(bool condition, std::string_view module, const std::string& message) {
  if (!condition) throw ValidationError(module, message);
}

}  // namespace nores

#pragma once

#include <stdexcept>
#include <string>

namespace gradtc {

// Bad or inconsistent configuration input. CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Physically out-of-domain parameters, e.g. a resonant Schrieffer-Wolff
// denominator. CLI exit code 3.
class param_domain_error : public std::runtime_error {
 public:
  explicit param_domain_error(const std::string& what) : std::runtime_error(what) {}
};

// A numerical invariant was violated during a run (norm drift, negative
// density-matrix eigenvalue, eigensolver residual...). CLI exit code 4.
class invariant_error : public std::runtime_error {
 public:
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace gradtc

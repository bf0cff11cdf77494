#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace summa {

/// Invalid configuration: missing representation, bad sizes, unknown names.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value is mathematically undefined for the requested operation
/// (nonpositive term under a fractional power, zero under a reciprocal, ...).
///
/// When the failure is tied to a sequence position, `index()` names the first
/// index whose result is undefined.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what,
                       std::optional<std::size_t> index = std::nullopt)
      : std::domain_error(what), index_(index) {}

  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  std::optional<std::size_t> index_;
};

/// A signal evaluator returned a non-finite value at a quadrature node.
class EvaluationError : public DomainError {
 public:
  EvaluationError(const std::string& what, double node)
      : DomainError(what), node_(node) {}

  double node() const noexcept { return node_; }

 private:
  double node_;
};

}  // namespace summa

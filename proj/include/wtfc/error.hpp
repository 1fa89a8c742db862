#pragma once

#include <stdexcept>
#include <string>

namespace wtfc {

/// Raised when an input violates a model invariant. `field()` names the
/// offending configuration key so front ends can report it verbatim.
class ValidationError : public std::invalid_argument
{
  public:
    ValidationError(std::string field, std::string const& message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field))
    {
    }

    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace wtfc

#pragma once

#include <stdexcept>
#include <string>

namespace whacamole {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WHACAMOLE_ERROR(Name)                  \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

WHACAMOLE_ERROR(MalformedInstance);
WHACAMOLE_ERROR(InvalidPick);
WHACAMOLE_ERROR(WrongFlavor);
WHACAMOLE_ERROR(TooLarge);
WHACAMOLE_ERROR(NoEligiblePick);
WHACAMOLE_ERROR(NoDistribution);
WHACAMOLE_ERROR(BadDistribution);
WHACAMOLE_ERROR(Infeasible);
WHACAMOLE_ERROR(NoSolution);
WHACAMOLE_ERROR(BadConfig);
WHACAMOLE_ERROR(UnknownName);

#undef WHACAMOLE_ERROR

}  // namespace whacamole

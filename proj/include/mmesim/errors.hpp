/*
 * This code is part of mmesim.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef MMESIM_ERRORS_HPP
#define MMESIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmesim {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A caller-supplied value is outside its admissible range.
class ArgumentError : public Error {
public:
  using Error::Error;
};

// Operands have incompatible or unsupported dimensions.
class DimensionError : public Error {
public:
  using Error::Error;
};

// A state or operator fails its structural invariants.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A measurement operator set does not resolve the identity.
class CompletenessError : public Error {
public:
  using Error::Error;
};

// A zero-probability measurement outcome was requested.
class ImpossibleOutcomeError : public Error {
public:
  using Error::Error;
};

// A run configuration is inconsistent or out of the supported envelope.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

// Numerical integration or conditioning broke a guaranteed tolerance.
class NumericalError : public Error {
public:
  using Error::Error;
};

// Filesystem or serialization failure.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace mmesim

#endif

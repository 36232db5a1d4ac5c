#pragma once

#include <stdexcept>
#include <string>

namespace wcs {

// Invalid deformation parameters, or a gamma argument that left the positive axis.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A series or quadrature failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value cannot be represented in linear double precision.
class RangeError : public std::range_error {
public:
    using std::range_error::range_error;
};

}  // namespace wcs

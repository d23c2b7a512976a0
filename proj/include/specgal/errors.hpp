#ifndef SPECGAL_ERRORS_HPP
#define SPECGAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace specgal
{

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Vector or tensor extents do not match the basis they are used with.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// A parameter is outside its admissible range (order, rho, tolerance, ...).
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// Coefficient fields violating positivity or the well-posedness inequality.
class InvalidCoefficient : public Error
{
public:
    using Error::Error;
};

/// Dense diagnostics refused because the matrix would be too large.
class SizeError : public Error
{
public:
    using Error::Error;
};

/// Newton or eigensolver failure, NaN/Inf in a Krylov iteration.
class NumericalError : public Error
{
public:
    using Error::Error;
};

} // namespace specgal

#endif // SPECGAL_ERRORS_HPP

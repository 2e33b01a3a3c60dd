#pragma once

#include <stdexcept>
#include <string>

namespace ncdual {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateState : public Error {
public:
    using Error::Error;
};

class NotInAlgebra : public Error {
public:
    using Error::Error;
};

class RelationMismatch : public Error {
public:
    using Error::Error;
};

class ParentMismatch : public Error {
public:
    using Error::Error;
};

class IllConditioned : public Error {
public:
    using Error::Error;
};

class ContourTooClose : public Error {
public:
    using Error::Error;
};

class NotAbelian : public Error {
public:
    using Error::Error;
};

class NotBoolean : public Error {
public:
    using Error::Error;
};

/// Malformed input data (files, tables, relations that violate their invariants).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace ncdual

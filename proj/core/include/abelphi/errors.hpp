#pragma once

#include <stdexcept>
#include <string>

namespace abelphi {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside an operation's domain (even character where odd is needed, bad c, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Divisor lattice with a missing entry.
class IncompleteLatticeError : public DomainError {
public:
    using DomainError::DomainError;
};

// Split of a cyclotomic polynomial across a ramified part.
class InseparableSplitError : public DomainError {
public:
    using DomainError::DomainError;
};

// Fixture data that contradicts itself.
class FixtureIntegrityError : public Error {
public:
    using Error::Error;
};

// Real or p-adic precision was not enough to decide an answer.
class PrecisionError : public Error {
public:
    using Error::Error;
};

// A search ran past its configured bound.
class BoundError : public Error {
public:
    using Error::Error;
};

// An identity that must hold failed. Always a bug.
class VerificationError : public Error {
public:
    using Error::Error;
};

}  // namespace abelphi

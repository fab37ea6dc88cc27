#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace canon {

using BigInt = boost::multiprecision::cpp_int;

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input file or byte stream.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t byte_offset = 0)
        : Error(what), byte_offset_(byte_offset) {}
    std::size_t byte_offset() const { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// An enumeration-bounded operation was asked to exceed its budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Internal invariant violation; indicates a bug, not bad input.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace canon

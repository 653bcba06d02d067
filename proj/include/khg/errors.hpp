#pragma once

#include <stdexcept>
#include <string>

namespace khg {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad vertex ids, bad arity, bad file syntax, bad parameters.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// A configured size/work cap was exceeded before the operation could finish.
class CapExceededError : public Error {
public:
    explicit CapExceededError(const std::string& msg) : Error(msg) {}
};

// Exhaustive search proved no 2-coloring exists.
class NotBipartiteError : public Error {
public:
    explicit NotBipartiteError(const std::string& msg) : Error(msg) {}
};

} // namespace khg

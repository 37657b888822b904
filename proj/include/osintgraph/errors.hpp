// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 osintgraph contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace osintgraph {

/// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
public:
    using Error::Error;
};

class EmptyDocument : public Error {
public:
    EmptyDocument() : Error("document is empty") {}
};

/// A crawler or AV-scan record that does not satisfy its schema.
class MalformedRecord : public Error {
public:
    MalformedRecord(std::string field, const std::string& why)
        : Error("malformed record: " + field + ": " + why), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Input violates a structural invariant of a file format (line numbers are 1-based).
class SchemaError : public Error {
public:
    SchemaError(std::size_t line, const std::string& why)
        : Error("line " + std::to_string(line) + ": " + why), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class UnknownMapper : public Error {
public:
    using Error::Error;
};

/// Statistics that are undefined for the given input (too few points, zero variance).
class DegenerateInput : public Error {
public:
    DegenerateInput(std::size_t n, const std::string& why)
        : Error(why + " (n=" + std::to_string(n) + ")"), n_(n) {}

    std::size_t n() const noexcept { return n_; }

private:
    std::size_t n_;
};

}  // namespace osintgraph

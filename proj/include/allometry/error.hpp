// Copyright 2026 The allometry authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace allometry {

enum class ErrorKind {
    BadInput,  // caller supplied invalid parameters or malformed data
    Numeric,   // computation is degenerate or overflowed
    Io,        // file could not be read or written
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_bad_input(const std::string& what) {
    throw Error(ErrorKind::BadInput, what);
}

[[noreturn]] inline void throw_numeric(const std::string& what) {
    throw Error(ErrorKind::Numeric, what);
}

[[noreturn]] inline void throw_io(const std::string& what) {
    throw Error(ErrorKind::Io, what);
}

}  // namespace allometry

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace procurate {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad input data: malformed JSONL lines, invariant violations, id clashes.
class IngestError : public Error {
public:
    IngestError(const std::string& path, std::size_t line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

// Binary/structured file does not follow its declared format.
class FormatError : public Error {
public:
    using Error::Error;
};

// Configuration or argument outside its admissible domain.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failures (open, read, write).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace procurate

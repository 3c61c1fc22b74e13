#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jcaudit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input content: malformed rows, dangling keys, invalid configuration.
class InputError : public Error {
public:
    using Error::Error;
    InputError(const std::string& file, std::size_t line, const std::string& reason);
};

/// Filesystem failure: missing input file, unwritable destination.
class IoError : public Error {
public:
    using Error::Error;
};

/// Lookup of an id that is not in the corpus.
class UnknownKeyError : public InputError {
public:
    UnknownKeyError(const std::string& kind, const std::string& key);
};

/// Coupling was requested on a corpus loaded without references.tsv.
class MissingReferencesError : public InputError {
public:
    MissingReferencesError();
};

}  // namespace jcaudit

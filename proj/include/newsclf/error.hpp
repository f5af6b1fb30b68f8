#pragma once

#include <stdexcept>
#include <string>

namespace newsclf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// A CSV file lacks a column its source schema requires.
class SchemaError : public Error {
public:
    SchemaError(const std::string& column, const std::string& path)
        : Error("missing column '" + column + "' in " + path), column_(column) {}

    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class StratificationError : public Error {
public:
    using Error::Error;
};

class EmptyVocabularyError : public Error {
public:
    using Error::Error;
};

/// Artifact version or shape does not match what the reader expects.
class VersionError : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

/// Wraps a failure inside run_pipeline with the stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& cause)
        : Error(stage + ": " + cause), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace newsclf

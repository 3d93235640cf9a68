#pragma once

#include <stdexcept>
#include <string>

namespace tritime {

/// Base for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnboundSymbol : public Error {
public:
    explicit UnboundSymbol(const std::string& name) : Error("unbound symbol: " + name), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class SingularMetric : public Error {
public:
    using Error::Error;
};

class InvalidMetric : public Error {
public:
    using Error::Error;
};

class DegenerateField : public Error {
public:
    using Error::Error;
};

class AnsatzViolation : public Error {
public:
    using Error::Error;
};

class DegenerateMomentum : public Error {
public:
    using Error::Error;
};

class OffShell : public Error {
public:
    using Error::Error;
};

class UnsupportedMetric : public Error {
public:
    using Error::Error;
};

class OpenPath : public Error {
public:
    using Error::Error;
};

class EmptyBox : public Error {
public:
    using Error::Error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class UnsupportedJ : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tritime

#ifndef HYPERLAB_ERRORS_HPP
#define HYPERLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct EnumerationCapExceeded : Error {
    explicit EnumerationCapExceeded(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace hyperlab

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rcgen {

// Malformed input data (bad JSON, schema violation, truncated line).
struct ParseError : std::runtime_error {
    size_t byte_offset = 0;
    size_t line = 0;  // 1-based when known, 0 otherwise

    ParseError(const std::string& msg, size_t offset, size_t line_no = 0)
        : std::runtime_error(msg), byte_offset(offset), line(line_no) {}
};

// Bad configuration (missing source, invalid weight, unknown task name).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model client request failure (network, HTTP status, missing transcript entry).
struct ClientError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Template instantiation failure; `placeholder` names the offending token.
struct TemplateError : std::runtime_error {
    std::string placeholder;

    TemplateError(const std::string& msg, std::string ph)
        : std::runtime_error(msg), placeholder(std::move(ph)) {}
};

}  // namespace rcgen

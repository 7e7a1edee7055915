#ifndef IPP_ERRORS_HPP_
#define IPP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ipp {

// Numeric values are shared with the C API status codes and the CLI exit codes.
enum class ErrorCode : int {
    usage = 1,
    validation = 2,
    infeasible = 3,
    resource = 4,
    parse = 5,
    io = 6,
    invalid_argument = 7,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

// The scene cannot be inspected as requested (viewpoint inside an obstacle, outside the workspace, ...).
struct InfeasibleError : Error {
    explicit InfeasibleError(const std::string& what) : Error(ErrorCode::infeasible, what) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& what) : Error(ErrorCode::resource, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

}  // namespace ipp

#endif  // IPP_ERRORS_HPP_

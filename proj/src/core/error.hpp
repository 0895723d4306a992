#ifndef CONNSEG_ERROR_HPP
#define CONNSEG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace connseg {

enum class ErrorKind {
    invalid_argument,
    numeric_failure,
    io_failure,
    empty_result,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void throw_invalid(const std::string& msg) {
    throw Error(ErrorKind::invalid_argument, msg);
}
[[noreturn]] inline void throw_numeric(const std::string& msg) {
    throw Error(ErrorKind::numeric_failure, msg);
}
[[noreturn]] inline void throw_io(const std::string& msg) {
    throw Error(ErrorKind::io_failure, msg);
}
[[noreturn]] inline void throw_empty(const std::string& msg) {
    throw Error(ErrorKind::empty_result, msg);
}

}  // namespace connseg

#endif

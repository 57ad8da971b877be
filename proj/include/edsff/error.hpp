#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edsff {

// Malformed text input; carries the byte offset of the failure.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// A mathematical precondition does not hold (singular curve, off-curve
// point, zero input, field mismatch, ...). User-facing.
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An identity the implementation guarantees failed to hold. Always a bug.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw domain_error(msg);
}

inline void ensure(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
}

}  // namespace edsff

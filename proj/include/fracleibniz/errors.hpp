#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracleibniz {

// A Gamma product or 0F1 parameter hits a pole for the requested order.
class pole_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Positive integer orders never build a Gamma(1-a) base; callers must take
// the ordinary-derivative path instead.
class integer_order_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A series was asked for a coefficient beyond its truncation order.
class truncation_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Operands disagree on order, Gamma base, or some other structural tag.
class mismatch_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A series operation whose order precondition (O(k) = 1, zero constant term, ...) fails.
class series_order_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class unsupported_family_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The expression-tree normalizer met a shape outside its canonical basis.
class incomparable_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

} // namespace fracleibniz

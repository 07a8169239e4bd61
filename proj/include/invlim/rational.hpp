#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace invlim {

// expression templates off so the types behave like plain values in
// std::min/std::max and structured code
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// Error with a stable machine-readable code, used across all modules.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

// Parses "p/q" or "p" (optionally signed). Throws Error("ParseError") on junk.
Rat parse_rat(const std::string& s);

// Lowest-terms rendering: "p/q", or "p" when the denominator is 1.
std::string rat_str(const Rat& r);

// floor(a/b) for b > 0.
Int floor_div(const Rat& r);

}  // namespace invlim

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qadic {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientPrecision : Error {
    using Error::Error;
};

struct CuntzRelationViolation : Error {
    using Error::Error;
};

struct HypothesisViolation : Error {
    using Error::Error;
};

struct UnsupportedIsometry : Error {
    using Error::Error;
};

struct NonTermination : Error {
    using Error::Error;
};

struct UnresolvedConvention : Error {
    using Error::Error;
};

struct ArithmeticOverflow : Error {
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
        : Error(format(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                              const std::string& detail) {
        std::string msg = "parse error at byte " + std::to_string(offset) + ": " + detail;
        if (!expected.empty()) {
            msg += "; expected one of:";
            for (const auto& e : expected) msg += " " + e;
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

}  // namespace qadic

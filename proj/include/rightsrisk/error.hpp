#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rightsrisk {

struct SourceSpan {
    std::string file;
    int startLine = 1;
    int startCol = 1;
    int endLine = 1;
    int endCol = 1;

    bool operator==(const SourceSpan&) const = default;
};

inline std::string to_string(const SourceSpan& span) {
    std::string out = span.file.empty() ? std::string("<input>") : span.file;
    out += ':' + std::to_string(span.startLine) + ':' + std::to_string(span.startCol);
    return out;
}

// Base class for every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(SourceSpan span, std::string message, std::vector<std::string> expected = {})
        : Error(format(span, message, expected)),
          span_(std::move(span)),
          message_(std::move(message)),
          expected_(std::move(expected)) {}

    const SourceSpan& span() const noexcept { return span_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(const SourceSpan& span, const std::string& message,
                              const std::vector<std::string>& expected) {
        std::string out = to_string(span) + ": " + message;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i != 0) out += i + 1 == expected.size() ? " or " : ", ";
                out += expected[i];
            }
            out += ')';
        }
        return out;
    }

    SourceSpan span_;
    std::string message_;
    std::vector<std::string> expected_;
};

enum class Severity { Error, Warning };

inline const char* to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;

    auto operator<=>(const Diagnostic&) const = default;
};

inline std::string to_string(const Diagnostic& d) {
    return std::string(to_string(d.severity)) + " [" + d.code + "]: " + d.message;
}

inline bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics)
        if (d.severity == Severity::Error) return true;
    return false;
}

} // namespace rightsrisk

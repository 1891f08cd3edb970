#ifndef STRATCAT_ERRORS_HPP
#define STRATCAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace stratcat {

// Error with a stable machine-readable code ("NotT0", "CapExceeded", ...).
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class CapExceeded : public DomainError {
public:
    explicit CapExceeded(const std::string& what) : DomainError("CapExceeded", what) {}
};

// Structural validation failure; carries the itemized report.
class ValidationError : public DomainError {
public:
    ValidationError(std::string code, std::vector<std::string> report)
        : DomainError(std::move(code), join(report)), report_(std::move(report)) {}
    const std::vector<std::string>& report() const { return report_; }

private:
    static std::string join(const std::vector<std::string>& r) {
        std::string s;
        for (const auto& line : r) {
            if (!s.empty()) s += "; ";
            s += line;
        }
        return s;
    }
    std::vector<std::string> report_;
};

class ParseError : public DomainError {
public:
    explicit ParseError(const std::string& what) : DomainError("ParseError", what) {}
};

} // namespace stratcat

#endif

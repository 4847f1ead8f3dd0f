#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <utility>

namespace gu {

// Domain error carrying a stable machine-readable code ("E_...") plus free-form
// details for structured reporting.  Everything user-facing funnels through this.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message,
                nlohmann::json details = nlohmann::json::object())
        : std::runtime_error(message), code_(std::move(code)), details_(std::move(details)) {}

    const std::string& code() const { return code_; }
    const nlohmann::json& details() const { return details_; }

    nlohmann::json to_json() const {
        nlohmann::json j{{"code", code_}, {"message", what()}};
        if (!details_.empty()) j["details"] = details_;
        return j;
    }

private:
    std::string code_;
    nlohmann::json details_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message,
                              nlohmann::json details = nlohmann::json::object()) {
    throw DomainError(std::move(code), message, std::move(details));
}

}  // namespace gu

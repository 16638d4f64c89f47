#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lexqa {

/// A requested document, span, or gold file does not exist.
class NotFoundError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class GatewayErrorKind {
    not_configured,
    transport,
    timeout,
    bad_request,
    model_unavailable,
    malformed_response,
    length_mismatch,
    protocol_violation,
};

const char* to_string(GatewayErrorKind kind) noexcept;

/// Failure at the inference boundary. `span_id` is filled in by the stage
/// that issued the call, when the call was made on behalf of one span.
class GatewayError : public std::runtime_error {
public:
    GatewayError(GatewayErrorKind kind, const std::string& message, std::string span_id = {})
        : std::runtime_error(compose(kind, message, span_id)),
          kind_(kind),
          detail_(message),
          span_id_(std::move(span_id)) {}

    GatewayErrorKind kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }
    const std::string& span_id() const noexcept { return span_id_; }

    GatewayError with_span(std::string span_id) const {
        return GatewayError(kind_, detail_, std::move(span_id));
    }

private:
    static std::string compose(GatewayErrorKind kind, const std::string& message,
                               const std::string& span_id) {
        std::string out = std::string("gateway ") + to_string(kind) + ": " + message;
        if (!span_id.empty()) out += " (span " + span_id + ")";
        return out;
    }

    GatewayErrorKind kind_;
    std::string detail_;
    std::string span_id_;
};

inline const char* to_string(GatewayErrorKind kind) noexcept {
    switch (kind) {
        case GatewayErrorKind::not_configured: return "not-configured";
        case GatewayErrorKind::transport: return "transport";
        case GatewayErrorKind::timeout: return "timeout";
        case GatewayErrorKind::bad_request: return "bad-request";
        case GatewayErrorKind::model_unavailable: return "model-unavailable";
        case GatewayErrorKind::malformed_response: return "malformed-response";
        case GatewayErrorKind::length_mismatch: return "length-mismatch";
        case GatewayErrorKind::protocol_violation: return "protocol-violation";
    }
    return "unknown";
}

}  // namespace lexqa

#pragma once

// The inference boundary. Engine code talks to a ModelGateway; the two
// implementations are an in-process deterministic stub and an HTTP client
// for any server speaking the /v1 wire protocol (the stub server below, or
// a model sidecar).
//
// Wire protocol (UTF-8 JSON, offsets in code points):
//   POST /v1/similarity   {"question": str, "candidates": [str]} -> {"scores": [number]}
//   POST /v1/qa           {"question": str, "context": str}
//                         -> {"answer_start": int, "answer_end": int, "score": number}
//   POST /v1/token_count  {"text": str} -> {"count": int}
//   GET  /v1/health       -> {"status": "ok", "models": {"similarity": str, "qa": str}}
// Errors: 400 malformed body, 503 model unavailable; body {"error": str}.

#include <chrono>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace httplib {
class Server;
}

namespace lexqa {

/// Extractive-QA result. Offsets are byte offsets into the context inside
/// the process; start == end == 0 encodes "no answer".
struct QaResponse {
    std::size_t answer_start = 0;
    std::size_t answer_end = 0;
    double score = 0.0;

    bool no_answer() const noexcept { return answer_start == 0 && answer_end == 0; }
    friend bool operator==(const QaResponse&, const QaResponse&) = default;
};

struct GatewayHealth {
    std::string status;
    std::string similarity_model;
    std::string qa_model;
};

class ModelGateway {
public:
    virtual ~ModelGateway() = default;

    /// One score in [0,1] per candidate, in candidate order.
    virtual std::vector<double> similarity(std::string_view question,
                                           const std::vector<std::string>& candidates) const = 0;
    virtual QaResponse qa(std::string_view question, std::string_view context) const = 0;
    virtual std::size_t token_count(std::string_view text) const = 0;
    virtual GatewayHealth health() const = 0;

    /// Identifier recorded in reports for scores produced by similarity().
    virtual std::string similarity_scorer_id() const = 0;
};

/// Jaccard coefficient of the lowercased, punctuation-stripped term sets;
/// 0 when either set is empty.
double stub_similarity(std::string_view question, std::string_view candidate);

/// Highest-Jaccard sentence of `context` (earliest on ties), confidence equal
/// to that Jaccard; no-answer when every sentence scores 0.
QaResponse stub_qa(std::string_view question, std::string_view context);

class StubGateway final : public ModelGateway {
public:
    std::vector<double> similarity(std::string_view question,
                                   const std::vector<std::string>& candidates) const override;
    QaResponse qa(std::string_view question, std::string_view context) const override;
    std::size_t token_count(std::string_view text) const override;
    GatewayHealth health() const override;
    std::string similarity_scorer_id() const override { return "stub-jaccard"; }
};

struct HttpGatewayOptions {
    std::string base_url;  // e.g. "http://127.0.0.1:8081"
    std::chrono::milliseconds connect_timeout{2000};
    std::chrono::milliseconds read_timeout{60000};
    int max_retries = 2;
    std::chrono::milliseconds initial_backoff{100};
};

/// Client for a remote gateway. Transport failures and 5xx responses are
/// retried with exponential backoff up to max_retries, then reported as a
/// GatewayError. Responses are validated (alignment, score range, offset
/// bounds) and never clamped.
class HttpGateway final : public ModelGateway {
public:
    explicit HttpGateway(HttpGatewayOptions options);

    std::vector<double> similarity(std::string_view question,
                                   const std::vector<std::string>& candidates) const override;
    QaResponse qa(std::string_view question, std::string_view context) const override;
    std::size_t token_count(std::string_view text) const override;
    GatewayHealth health() const override;
    std::string similarity_scorer_id() const override { return "cross-encoder"; }

    const HttpGatewayOptions& options() const noexcept { return options_; }

private:
    std::string post(const std::string& path, const std::string& body) const;
    std::string get(const std::string& path) const;

    HttpGatewayOptions options_;
};

/// Registers the /v1 gateway routes on `server`, answering with `backend`.
void mount_gateway_routes(httplib::Server& server, const ModelGateway& backend);

}  // namespace lexqa

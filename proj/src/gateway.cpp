#include "lexqa/gateway.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/ingestion.hpp"
#include "lexqa/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cmath>
#include <set>
#include <thread>

namespace lexqa {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Stub backends

namespace {

std::set<std::string> term_set(std::string_view s) {
    auto t = terms(s);
    return {std::make_move_iterator(t.begin()), std::make_move_iterator(t.end())};
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
    if (a.empty() || b.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& t : a) common += b.count(t);
    const std::size_t uni = a.size() + b.size() - common;
    return static_cast<double>(common) / static_cast<double>(uni);
}

}  // namespace

double stub_similarity(std::string_view question, std::string_view candidate) {
    return jaccard(term_set(question), term_set(candidate));
}

QaResponse stub_qa(std::string_view question, std::string_view context) {
    const auto q = term_set(question);
    QaResponse best;
    for (const auto& sentence : split_sentences(context)) {
        const double overlap = jaccard(q, term_set(sentence.text));
        if (overlap > best.score) {
            best = QaResponse{sentence.char_start, sentence.char_end, overlap};
        }
    }
    return best;
}

std::vector<double> StubGateway::similarity(std::string_view question,
                                            const std::vector<std::string>& candidates) const {
    const auto q = term_set(question);
    std::vector<double> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(jaccard(q, term_set(c)));
    return out;
}

QaResponse StubGateway::qa(std::string_view question, std::string_view context) const {
    return stub_qa(question, context);
}

std::size_t StubGateway::token_count(std::string_view text) const { return count_tokens(text); }

GatewayHealth StubGateway::health() const { return {"ok", "stub-jaccard", "stub-overlap"}; }

// ---------------------------------------------------------------------------
// HTTP client

namespace {

bool valid_score(const json& v) {
    if (!v.is_number()) return false;
    const double d = v.get<double>();
    return std::isfinite(d) && d >= 0.0 && d <= 1.0;
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw GatewayError(GatewayErrorKind::malformed_response, std::string("invalid JSON: ") + e.what());
    }
}

std::string error_message(const std::string& body) {
    try {
        auto j = json::parse(body);
        if (j.is_object() && j.contains("error") && j["error"].is_string()) return j["error"].get<std::string>();
    } catch (const json::parse_error&) {
    }
    return body;
}

}  // namespace

HttpGateway::HttpGateway(HttpGatewayOptions options) : options_(std::move(options)) {
    if (options_.base_url.empty()) {
        throw GatewayError(GatewayErrorKind::not_configured, "gateway URL is empty");
    }
    while (!options_.base_url.empty() && options_.base_url.back() == '/') options_.base_url.pop_back();
}

namespace {

template <typename Call>
std::string with_retries(const HttpGatewayOptions& opts, const std::string& path, Call&& call) {
    auto backoff = opts.initial_backoff;
    GatewayError last(GatewayErrorKind::transport, "no attempt made");
    for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
        httplib::Client client(opts.base_url);
        client.set_connection_timeout(opts.connect_timeout);
        client.set_read_timeout(opts.read_timeout);
        client.set_write_timeout(opts.read_timeout);
        httplib::Result res = call(client);
        if (!res) {
            const auto err = res.error();
            const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
            last = GatewayError(timed_out ? GatewayErrorKind::timeout : GatewayErrorKind::transport,
                                path + ": " + httplib::to_string(err));
            continue;
        }
        if (res->status == 200) return res->body;
        if (res->status == 400) {
            throw GatewayError(GatewayErrorKind::bad_request, path + ": " + error_message(res->body));
        }
        if (res->status >= 500) {
            last = GatewayError(res->status == 503 ? GatewayErrorKind::model_unavailable : GatewayErrorKind::transport,
                                path + ": HTTP " + std::to_string(res->status) + " " + error_message(res->body));
            continue;
        }
        throw GatewayError(GatewayErrorKind::malformed_response,
                           path + ": unexpected HTTP " + std::to_string(res->status));
    }
    throw last;
}

}  // namespace

std::string HttpGateway::post(const std::string& path, const std::string& body) const {
    return with_retries(options_, path, [&](httplib::Client& c) { return c.Post(path, body, "application/json"); });
}

std::string HttpGateway::get(const std::string& path) const {
    return with_retries(options_, path, [&](httplib::Client& c) { return c.Get(path); });
}

std::vector<double> HttpGateway::similarity(std::string_view question,
                                            const std::vector<std::string>& candidates) const {
    if (candidates.empty()) return {};
    json req = {{"question", question}, {"candidates", candidates}};
    json res = parse_body(post("/v1/similarity", req.dump()));
    if (!res.is_object() || !res.contains("scores") || !res["scores"].is_array()) {
        throw GatewayError(GatewayErrorKind::malformed_response, "/v1/similarity: missing \"scores\" array");
    }
    const auto& scores = res["scores"];
    if (scores.size() != candidates.size()) {
        throw GatewayError(GatewayErrorKind::length_mismatch,
                           "/v1/similarity: " + std::to_string(scores.size()) + " scores for " +
                               std::to_string(candidates.size()) + " candidates");
    }
    std::vector<double> out;
    out.reserve(scores.size());
    for (const auto& s : scores) {
        if (!s.is_number()) {
            throw GatewayError(GatewayErrorKind::malformed_response, "/v1/similarity: non-numeric score");
        }
        if (!valid_score(s)) {
            throw GatewayError(GatewayErrorKind::protocol_violation,
                               "/v1/similarity: score outside [0,1]: " + s.dump());
        }
        out.push_back(s.get<double>());
    }
    return out;
}

QaResponse HttpGateway::qa(std::string_view question, std::string_view context) const {
    json req = {{"question", question}, {"context", context}};
    json res = parse_body(post("/v1/qa", req.dump()));
    if (!res.is_object() || !res.contains("answer_start") || !res.contains("answer_end") ||
        !res.contains("score") || !res["answer_start"].is_number_integer() ||
        !res["answer_end"].is_number_integer() || !res["score"].is_number()) {
        throw GatewayError(GatewayErrorKind::malformed_response, "/v1/qa: expected answer_start, answer_end, score");
    }
    const auto start = res["answer_start"].get<long long>();
    const auto end = res["answer_end"].get<long long>();
    const auto cps = static_cast<long long>(codepoint_count(context));
    if (start < 0 || end < start || end > cps) {
        throw GatewayError(GatewayErrorKind::protocol_violation,
                           "/v1/qa: offsets [" + std::to_string(start) + ", " + std::to_string(end) +
                               ") outside context of length " + std::to_string(cps));
    }
    if (!valid_score(res["score"])) {
        throw GatewayError(GatewayErrorKind::protocol_violation, "/v1/qa: score outside [0,1]");
    }
    QaResponse out;
    out.answer_start = *codepoint_to_byte(context, static_cast<std::size_t>(start));
    out.answer_end = *codepoint_to_byte(context, static_cast<std::size_t>(end));
    out.score = res["score"].get<double>();
    return out;
}

std::size_t HttpGateway::token_count(std::string_view text) const {
    json req = {{"text", text}};
    json res = parse_body(post("/v1/token_count", req.dump()));
    if (!res.is_object() || !res.contains("count") || !res["count"].is_number_integer() ||
        res["count"].get<long long>() < 0) {
        throw GatewayError(GatewayErrorKind::malformed_response, "/v1/token_count: expected non-negative \"count\"");
    }
    return res["count"].get<std::size_t>();
}

GatewayHealth HttpGateway::health() const {
    json res = parse_body(get("/v1/health"));
    try {
        return {res.at("status").get<std::string>(), res.at("models").at("similarity").get<std::string>(),
                res.at("models").at("qa").get<std::string>()};
    } catch (const json::exception& e) {
        throw GatewayError(GatewayErrorKind::malformed_response, std::string("/v1/health: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Server routes

namespace {

void reply_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    reply_json(res, status, json{{"error", message}});
}

/// Parses a request body into an object; replies 400 and returns false on failure.
bool request_object(const httplib::Request& req, httplib::Response& res, json& out) {
    try {
        out = json::parse(req.body);
    } catch (const json::parse_error&) {
        reply_error(res, 400, "request body is not valid JSON");
        return false;
    }
    if (!out.is_object()) {
        reply_error(res, 400, "request body must be a JSON object");
        return false;
    }
    return true;
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
    try {
        handler();
    } catch (const GatewayError& e) {
        reply_error(res, 503, e.what());
    } catch (const json::exception& e) {
        reply_error(res, 400, e.what());
    }
}

}  // namespace

void mount_gateway_routes(httplib::Server& server, const ModelGateway& backend) {
    server.Post("/v1/similarity", [&backend](const httplib::Request& req, httplib::Response& res) {
        json body;
        if (!request_object(req, res, body)) return;
        if (!body.contains("question") || !body["question"].is_string() || !body.contains("candidates") ||
            !body["candidates"].is_array()) {
            return reply_error(res, 400, "expected {\"question\": str, \"candidates\": [str]}");
        }
        std::vector<std::string> candidates;
        for (const auto& c : body["candidates"]) {
            if (!c.is_string()) return reply_error(res, 400, "candidates must be strings");
            candidates.push_back(c.get<std::string>());
        }
        guarded(res, [&] {
            reply_json(res, 200, json{{"scores", backend.similarity(body["question"].get<std::string>(), candidates)}});
        });
    });

    server.Post("/v1/qa", [&backend](const httplib::Request& req, httplib::Response& res) {
        json body;
        if (!request_object(req, res, body)) return;
        if (!body.contains("question") || !body["question"].is_string() || !body.contains("context") ||
            !body["context"].is_string()) {
            return reply_error(res, 400, "expected {\"question\": str, \"context\": str}");
        }
        guarded(res, [&] {
            const auto context = body["context"].get<std::string>();
            const QaResponse r = backend.qa(body["question"].get<std::string>(), context);
            reply_json(res, 200,
                       json{{"answer_start", byte_to_codepoint(context, r.answer_start)},
                            {"answer_end", byte_to_codepoint(context, r.answer_end)},
                            {"score", r.score}});
        });
    });

    server.Post("/v1/token_count", [&backend](const httplib::Request& req, httplib::Response& res) {
        json body;
        if (!request_object(req, res, body)) return;
        if (!body.contains("text") || !body["text"].is_string()) {
            return reply_error(res, 400, "expected {\"text\": str}");
        }
        guarded(res, [&] { reply_json(res, 200, json{{"count", backend.token_count(body["text"].get<std::string>())}}); });
    });

    server.Get("/v1/health", [&backend](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] {
            const auto h = backend.health();
            reply_json(res, 200, json{{"status", h.status}, {"models", {{"similarity", h.similarity_model}, {"qa", h.qa_model}}}});
        });
    });
}

}  // namespace lexqa

#include "lexqa/service.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

#include <httplib.h>

#include <stdexcept>

namespace lexqa {

using nlohmann::json;

json spans_listing_json(const std::string& doc_id, const std::vector<ContextSpan>& spans,
                        const std::string& normalized_text, const PartitionConfig& config,
                        const std::string& ruleset_id) {
    json arr = json::array();
    // Spans are sorted by char_start, so the code-point offset advances monotonically.
    std::size_t byte_pos = 0;
    std::size_t cp_pos = 0;
    auto to_cp = [&](std::size_t byte) {
        cp_pos += codepoint_count(std::string_view(normalized_text).substr(byte_pos, byte - byte_pos));
        byte_pos = byte;
        return cp_pos;
    };
    for (const auto& s : spans) {
        const std::size_t start = to_cp(s.char_start);
        const std::size_t end = to_cp(s.char_end);
        arr.push_back({{"span_id", s.span_id},
                       {"ordinal", s.ordinal},
                       {"char_start", start},
                       {"char_end", end},
                       {"text", s.text},
                       {"sentence_first", s.first_sentence},
                       {"sentence_last", s.last_sentence},
                       {"token_count", s.token_count},
                       {"partial", s.partial}});
    }
    return {{"doc_id", doc_id},
            {"max_tokens", config.max_span_tokens},
            {"counter", to_string(config.counter)},
            {"ruleset_id", ruleset_id},
            {"span_count", spans.size()},
            {"spans", std::move(arr)}};
}

namespace {

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
    reply(res, status, json{{"error", message}});
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
    try {
        handler();
    } catch (const NotFoundError& e) {
        reply_error(res, 404, e.what());
    } catch (const GatewayError& e) {
        reply_error(res, 503, e.what());
    } catch (const std::invalid_argument& e) {
        reply_error(res, 400, e.what());
    } catch (const json::exception& e) {
        reply_error(res, 400, e.what());
    } catch (const std::exception& e) {
        reply_error(res, 500, e.what());
    }
}

json parse_object(const std::string& body) {
    json j;
    try {
        j = json::parse(body);
    } catch (const json::parse_error&) {
        throw std::invalid_argument("request body is not valid JSON");
    }
    if (!j.is_object()) throw std::invalid_argument("request body must be a JSON object");
    return j;
}

std::size_t parse_positive(const std::string& s, const char* name) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v < 1) throw std::invalid_argument(std::string(name) + " must be a positive integer");
    return static_cast<std::size_t>(v);
}

json summary_json(const DocumentSummary& s) {
    return {{"doc_id", s.doc_id},
            {"title", s.title},
            {"source_uri", s.source_uri},
            {"sentence_count", s.sentence_count},
            {"span_count", s.span_count}};
}

}  // namespace

Service::Service(DocumentStore& store, const QaPipeline& pipeline, ServiceConfig config)
    : store_(store), pipeline_(pipeline), config_(std::move(config)) {}

void Service::mount(httplib::Server& server) {
    server.Post("/v1/documents", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const json body = parse_object(req.body);
            if (!body.contains("text") || !body["text"].is_string()) {
                throw std::invalid_argument("expected {\"title\": str, \"text\": str}");
            }
            const std::string title = body.value("title", std::string());
            const auto result = store_.upload(title, body["text"].get<std::string>(), body.value("source_uri", std::string()));
            reply(res, result.created ? 201 : 200,
                  json{{"doc_id", result.doc_id}, {"span_count", result.span_count}, {"created", result.created}});
        });
    });

    server.Get("/v1/documents", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] {
            json docs = json::array();
            for (const auto& s : store_.list()) docs.push_back(summary_json(s));
            reply(res, 200, json{{"documents", std::move(docs)}});
        });
    });

    server.Get("/v1/documents/:id", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { reply(res, 200, summary_json(store_.summary(req.path_params.at("id")))); });
    });

    server.Get("/v1/documents/:id/spans", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const std::string id = req.path_params.at("id");
            PartitionConfig cfg = store_.partition_config();
            if (req.has_param("max_tokens")) cfg.max_span_tokens = parse_positive(req.get_param_value("max_tokens"), "max_tokens");
            if (req.has_param("counter")) cfg.counter = parse_count_mode(req.get_param_value("counter"));
            const auto spans = store_.spans(id, cfg);
            const auto doc = store_.normalized(id);
            reply(res, 200, spans_listing_json(id, spans, doc.normalized_text, cfg, store_.rules().id()));
        });
    });

    server.Post("/v1/documents/:id/query", [this](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            const json body = parse_object(req.body);
            if (!body.contains("question") || !body["question"].is_string()) {
                throw std::invalid_argument("expected {\"question\": str, \"n\": int, \"scorer\": str}");
            }
            AskOptions opts;
            opts.n = config_.default_n;
            if (body.contains("n")) {
                if (!body["n"].is_number_integer() || body["n"].get<long long>() < 1) {
                    throw std::invalid_argument("n must be a positive integer");
                }
                opts.n = body["n"].get<std::size_t>();
            }
            opts.scorer = body.contains("scorer") ? parse_scorer_kind(body["scorer"].get<std::string>())
                                                  : config_.default_scorer;
            const auto doc = store_.prepared(req.path_params.at("id"));
            reply(res, 200, report_to_json(pipeline_.ask(*doc, body["question"].get<std::string>(), opts)));
        });
    });

    server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
        guarded(res, [&] {
            reply(res, 200,
                  json{{"status", "ok"},
                       {"documents", store_.list().size()},
                       {"gateway", config_.gateway_url.empty() ? json(nullptr) : json(config_.gateway_url)},
                       {"defaults",
                        {{"n", config_.default_n},
                         {"scorer", to_string(config_.default_scorer)},
                         {"max_span_tokens", store_.partition_config().max_span_tokens},
                         {"counter", to_string(store_.partition_config().counter)}}}});
        });
    });
}

}  // namespace lexqa

#pragma once

// HTTP front end over a DocumentStore and a QaPipeline.
//
//   POST /v1/documents               {"title": str, "text": str} -> 201 {"doc_id", "span_count", "created"}
//   GET  /v1/documents               -> {"documents": [summary]}
//   GET  /v1/documents/{id}/spans    ?max_tokens=512&counter=word -> span listing
//   POST /v1/documents/{id}/query    {"question", "n" = 5, "scorer" = "cross"|"tfidf"|"stub"} -> QueryReport
//   GET  /v1/health
//
// Errors carry {"error": str}: 400 bad request, 404 unknown document,
// 503 gateway failure.

#include "lexqa/pipeline.hpp"
#include "lexqa/store.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>

namespace httplib {
class Server;
}

namespace lexqa {

struct ServiceConfig {
    std::size_t default_n = kDefaultTopN;
    /// Used when a query omits "scorer": cross with a gateway, tfidf without.
    ScorerKind default_scorer = ScorerKind::tfidf;
    std::string gateway_url;
};

/// Span listing with code-point offsets into the normalized text.
nlohmann::json spans_listing_json(const std::string& doc_id, const std::vector<ContextSpan>& spans,
                                  const std::string& normalized_text, const PartitionConfig& config,
                                  const std::string& ruleset_id);

class Service {
public:
    Service(DocumentStore& store, const QaPipeline& pipeline, ServiceConfig config);

    void mount(httplib::Server& server);

private:
    DocumentStore& store_;
    const QaPipeline& pipeline_;
    ServiceConfig config_;
};

}  // namespace lexqa

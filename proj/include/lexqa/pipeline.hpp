#pragma once

// The ask path: score every span of a prepared document, keep the top N,
// extract an answer from each, and assemble the report.

#include "lexqa/chunker.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/ingestion.hpp"
#include "lexqa/report.hpp"
#include "lexqa/scoring.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

/// cross: similarity from the configured remote gateway.
/// tfidf: native tf-idf cosine.
/// stub:  in-process Jaccard similarity and overlap extraction, no backend.
enum class ScorerKind { cross, tfidf, stub };

const char* to_string(ScorerKind kind) noexcept;
ScorerKind parse_scorer_kind(std::string_view s);

/// A document after ingestion and partitioning: everything a query needs.
struct PreparedDocument {
    std::string doc_id;
    std::string title;
    PartitionConfig partition;
    std::string ruleset_id;
    std::size_t sentence_count = 0;
    std::vector<ContextSpan> spans;
    CorpusStatistics stats;
};

PreparedDocument prepare_document(const NormalizedDocument& doc, const PartitionConfig& config,
                                  const TokenCounter& counter);

PreparedDocument prepare_document(const NormalizedDocument& doc, std::vector<ContextSpan> spans,
                                  const PartitionConfig& config);

struct AskOptions {
    std::size_t n = kDefaultTopN;
    ScorerKind scorer = ScorerKind::cross;
};

class QaPipeline {
public:
    using Clock = std::function<std::string()>;

    /// `remote` may be null; cross scoring then fails with a not-configured
    /// GatewayError and extraction falls back to the stub backend.
    explicit QaPipeline(std::shared_ptr<const ModelGateway> remote = nullptr, Clock clock = utc_timestamp);

    /// Throws std::invalid_argument on an empty question or n < 1.
    QueryReport ask(const PreparedDocument& doc, std::string_view question, const AskOptions& options) const;

    std::vector<RelevanceScore> score_all(const PreparedDocument& doc, std::string_view question,
                                          ScorerKind scorer) const;

    const ModelGateway* remote() const noexcept { return remote_.get(); }

private:
    const ModelGateway& similarity_backend(ScorerKind scorer) const;
    const ModelGateway& extraction_backend(ScorerKind scorer) const;

    std::shared_ptr<const ModelGateway> remote_;
    StubGateway stub_;
    Clock clock_;
};

}  // namespace lexqa

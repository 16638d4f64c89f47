#include "lexqa/pipeline.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/extraction.hpp"
#include "lexqa/ranking.hpp"
#include "lexqa/text.hpp"

#include <stdexcept>

namespace lexqa {

const char* to_string(ScorerKind kind) noexcept {
    switch (kind) {
        case ScorerKind::cross: return "cross";
        case ScorerKind::tfidf: return "tfidf";
        case ScorerKind::stub: return "stub";
    }
    return "unknown";
}

ScorerKind parse_scorer_kind(std::string_view s) {
    if (s == "cross") return ScorerKind::cross;
    if (s == "tfidf") return ScorerKind::tfidf;
    if (s == "stub") return ScorerKind::stub;
    throw std::invalid_argument("unknown scorer: " + std::string(s) + " (expected cross, tfidf or stub)");
}

PreparedDocument prepare_document(const NormalizedDocument& doc, std::vector<ContextSpan> spans,
                                  const PartitionConfig& config) {
    PreparedDocument out;
    out.doc_id = doc.doc_id;
    out.title = doc.title;
    out.partition = config;
    out.ruleset_id = doc.abbreviation_ruleset_id;
    out.sentence_count = doc.sentences.size();
    out.stats = CorpusStatistics::build(spans);
    out.spans = std::move(spans);
    return out;
}

PreparedDocument prepare_document(const NormalizedDocument& doc, const PartitionConfig& config,
                                  const TokenCounter& counter) {
    return prepare_document(doc, partition(doc, config.max_span_tokens, counter), config);
}

QaPipeline::QaPipeline(std::shared_ptr<const ModelGateway> remote, Clock clock)
    : remote_(std::move(remote)), clock_(std::move(clock)) {}

const ModelGateway& QaPipeline::similarity_backend(ScorerKind scorer) const {
    if (scorer == ScorerKind::stub) return stub_;
    if (!remote_) {
        throw GatewayError(GatewayErrorKind::not_configured,
                           "the cross scorer needs a gateway URL (--gateway-url or LEXQA_GATEWAY_URL)");
    }
    return *remote_;
}

const ModelGateway& QaPipeline::extraction_backend(ScorerKind scorer) const {
    if (scorer == ScorerKind::stub || !remote_) return stub_;
    return *remote_;
}

std::vector<RelevanceScore> QaPipeline::score_all(const PreparedDocument& doc, std::string_view question,
                                                  ScorerKind scorer) const {
    std::vector<RelevanceScore> scores;
    scores.reserve(doc.spans.size());
    if (scorer == ScorerKind::tfidf) {
        for (const auto& span : doc.spans) scores.push_back(score_span_tfidf(question, span, doc.stats));
    } else {
        const ModelGateway& backend = similarity_backend(scorer);
        for (const auto& span : doc.spans) scores.push_back(score_span_semantic(question, span, backend));
    }
    return scores;
}

QueryReport QaPipeline::ask(const PreparedDocument& doc, std::string_view question, const AskOptions& options) const {
    if (trim(question).empty()) throw std::invalid_argument("question is empty");
    if (options.n < 1) throw std::invalid_argument("top-n must be at least 1");

    const auto scores = score_all(doc, question, options.scorer);
    const auto ranked = rank_spans(scores, options.n);

    const ModelGateway& extractor = extraction_backend(options.scorer);
    std::vector<ExtractedAnswer> answers;
    answers.reserve(ranked.size());
    for (const auto& r : ranked) answers.push_back(extract_answer(question, doc.spans[r.ordinal], extractor));

    ReportMeta meta;
    meta.doc_id = doc.doc_id;
    meta.doc_title = doc.title;
    meta.scorer_id = scores.empty() ? std::string(to_string(options.scorer)) : scores.front().scorer_id;
    meta.n = options.n;
    meta.generated_at = clock_();
    return assemble_report(std::string(question), ranked, answers, doc.spans, std::move(meta));
}

}  // namespace lexqa

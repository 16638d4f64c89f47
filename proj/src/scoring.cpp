#include "lexqa/scoring.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/text.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace lexqa {

CorpusStatistics CorpusStatistics::build(const std::vector<ContextSpan>& spans) {
    if (spans.empty()) throw std::invalid_argument("corpus statistics need at least one span");
    CorpusStatistics stats;
    stats.span_count_ = spans.size();
    for (const auto& span : spans) {
        auto t = terms(span.text);
        std::unordered_set<std::string> seen(t.begin(), t.end());
        for (const auto& term : seen) ++stats.df_[term];
    }
    return stats;
}

std::size_t CorpusStatistics::df(const std::string& term) const {
    auto it = df_.find(term);
    return it == df_.end() ? 0 : it->second;
}

double CorpusStatistics::idf(const std::string& term) const {
    const double n = static_cast<double>(span_count_);
    return std::log((1.0 + n) / (1.0 + static_cast<double>(df(term)))) + 1.0;
}

std::unordered_map<std::string, double> tfidf_vector(std::string_view text, const CorpusStatistics& stats) {
    std::unordered_map<std::string, double> v;
    for (auto& t : terms(text)) v[std::move(t)] += 1.0;
    for (auto& [term, w] : v) w *= stats.idf(term);
    return v;
}

namespace {

using SparseVector = std::unordered_map<std::string, double>;

double cosine(const SparseVector& va, const SparseVector& vb) {
    if (va.empty() || vb.empty()) return 0.0;
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (const auto& [term, w] : va) {
        na += w * w;
        if (auto it = vb.find(term); it != vb.end()) dot += w * it->second;
    }
    for (const auto& [term, w] : vb) nb += w * w;
    const double c = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::clamp(c, 0.0, 1.0);
}

}  // namespace

double tfidf_cosine(std::string_view a, std::string_view b, const CorpusStatistics& stats) {
    return cosine(tfidf_vector(a, stats), tfidf_vector(b, stats));
}

RelevanceScore score_span_semantic(std::string_view question, const ContextSpan& span, const ModelGateway& gateway) {
    if (span.segments.empty()) throw std::invalid_argument("span " + span.span_id + " has no sentences");
    std::vector<double> scores;
    try {
        scores = gateway.similarity(question, span.sentence_texts());
    } catch (const GatewayError& e) {
        throw e.with_span(span.span_id);
    }
    if (scores.size() != span.segments.size()) {
        throw GatewayError(GatewayErrorKind::length_mismatch, "similarity scores not aligned with sentences",
                           span.span_id);
    }
    double best = 0.0;
    for (double s : scores) {
        if (!std::isfinite(s) || s < 0.0 || s > 1.0) {
            throw GatewayError(GatewayErrorKind::protocol_violation,
                               "similarity score outside [0,1]: " + std::to_string(s), span.span_id);
        }
        best = std::max(best, s);
    }
    return {span.span_id, span.ordinal, best, gateway.similarity_scorer_id()};
}

RelevanceScore score_span_tfidf(std::string_view question, const ContextSpan& span, const CorpusStatistics& stats) {
    const auto q = tfidf_vector(question, stats);
    double best = 0.0;
    for (const auto& seg : span.segments) best = std::max(best, cosine(q, tfidf_vector(span.segment_text(seg), stats)));
    return {span.span_id, span.ordinal, best, std::string(kTfidfScorerId)};
}

}  // namespace lexqa

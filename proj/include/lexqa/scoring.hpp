#pragma once

// Question-to-span relevance. Both scorers score every sentence of a span
// and keep the maximum.

#include "lexqa/chunker.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexqa {

class ModelGateway;

struct RelevanceScore {
    std::string span_id;
    std::size_t ordinal = 0;
    double score = 0.0;
    std::string scorer_id;

    friend bool operator==(const RelevanceScore&, const RelevanceScore&) = default;
};

inline constexpr std::string_view kTfidfScorerId = "tfidf:raw-tf,smooth-idf,l2-cosine,max-sentence";

/// Document frequencies of lowercased, punctuation-stripped terms over the
/// spans of one document.
class CorpusStatistics {
public:
    /// Throws std::invalid_argument on an empty span list.
    static CorpusStatistics build(const std::vector<ContextSpan>& spans);

    std::size_t span_count() const noexcept { return span_count_; }
    std::size_t df(const std::string& term) const;
    const std::unordered_map<std::string, std::size_t>& document_frequencies() const noexcept { return df_; }

    /// ln((1 + N) / (1 + df)) + 1; unseen terms use df = 0.
    double idf(const std::string& term) const;

private:
    std::size_t span_count_ = 0;
    std::unordered_map<std::string, std::size_t> df_;
};

/// Sparse tf-idf vector (raw term counts times idf).
std::unordered_map<std::string, double> tfidf_vector(std::string_view text, const CorpusStatistics& stats);

/// Cosine of two tf-idf vectors; 0 when either is empty.
double tfidf_cosine(std::string_view a, std::string_view b, const CorpusStatistics& stats);

/// Max over the span's sentences of the gateway similarity. Gateway errors
/// are rethrown with the span id attached; scores outside [0,1] are a
/// protocol violation.
RelevanceScore score_span_semantic(std::string_view question, const ContextSpan& span, const ModelGateway& gateway);

/// Max over the span's sentences of the tf-idf cosine with the question.
RelevanceScore score_span_tfidf(std::string_view question, const ContextSpan& span, const CorpusStatistics& stats);

}  // namespace lexqa

#pragma once

// Paragraph-first partitioning of a normalized document into token-bounded
// context spans.

#include "lexqa/ingestion.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

/// A sentence, or the part of one, that lies inside a span. Offsets are
/// relative to the span text.
struct SpanSegment {
    std::size_t sentence = 0;
    std::size_t start = 0;
    std::size_t end = 0;

    friend bool operator==(const SpanSegment&, const SpanSegment&) = default;
};

struct ContextSpan {
    std::string span_id;  // "<doc_id>#<ordinal>"
    std::string doc_id;
    std::size_t ordinal = 0;
    std::size_t char_start = 0;  // byte offsets into normalized_text
    std::size_t char_end = 0;
    std::string text;
    std::size_t first_sentence = 0;  // inclusive range of sentence indices
    std::size_t last_sentence = 0;
    std::size_t token_count = 0;
    /// Set when the span holds only a piece of one oversized sentence.
    bool partial = false;
    std::vector<SpanSegment> segments;

    std::string_view segment_text(const SpanSegment& seg) const {
        return std::string_view(text).substr(seg.start, seg.end - seg.start);
    }
    std::vector<std::string> sentence_texts() const;

    friend bool operator==(const ContextSpan&, const ContextSpan&) = default;
};

struct PartitionConfig {
    std::size_t max_span_tokens = 512;
    CountMode counter = CountMode::word;

    friend bool operator==(const PartitionConfig&, const PartitionConfig&) = default;
};

/// Splits at paragraph boundaries; a paragraph over the limit is bisected at
/// the sentence boundary whose left-side token count is closest to half the
/// paragraph (earlier boundary on ties), recursively. A lone sentence over the
/// limit is bisected at the whitespace boundary nearest its word midpoint, and
/// a lone oversized word at its code-point midpoint.
///
/// Throws std::invalid_argument when max_span_tokens < 1, the document has
/// no sentences, or the counter rates a single code point above the limit.
std::vector<ContextSpan> partition(const NormalizedDocument& doc, std::size_t max_span_tokens,
                                   const TokenCounter& counter);

inline std::vector<ContextSpan> partition(const NormalizedDocument& doc, std::size_t max_span_tokens = 512) {
    return partition(doc, max_span_tokens, TokenCounter{});
}

std::string make_span_id(std::string_view doc_id, std::size_t ordinal);

}  // namespace lexqa

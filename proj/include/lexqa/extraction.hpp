#pragma once

#include "lexqa/chunker.hpp"

#include <cstddef>
#include <string>
#include <string_view>

namespace lexqa {

class ModelGateway;

/// Answer demarcated inside one span. Offsets are byte offsets into the span
/// text; an empty answer has start == end == 0 and no text.
struct ExtractedAnswer {
    std::string span_id;
    std::size_t char_start = 0;
    std::size_t char_end = 0;
    std::string answer_text;
    double confidence = 0.0;
    bool empty = true;

    static ExtractedAnswer none(std::string span_id, double confidence = 0.0) {
        ExtractedAnswer a;
        a.span_id = std::move(span_id);
        a.confidence = confidence;
        return a;
    }

    friend bool operator==(const ExtractedAnswer&, const ExtractedAnswer&) = default;
};

/// Asks the gateway's QA endpoint for the answer in `span`. Offsets outside
/// the span, inverted ranges, a zero-length answer away from (0, 0), offsets
/// splitting a UTF-8 sequence, or confidence outside [0,1] raise a
/// protocol-violation GatewayError carrying the span id.
ExtractedAnswer extract_answer(std::string_view question, const ContextSpan& span, const ModelGateway& gateway);

}  // namespace lexqa

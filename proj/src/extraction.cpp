#include "lexqa/extraction.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/text.hpp"

#include <cmath>
#include <stdexcept>

namespace lexqa {

ExtractedAnswer extract_answer(std::string_view question, const ContextSpan& span, const ModelGateway& gateway) {
    if (span.text.empty()) throw std::invalid_argument("span " + span.span_id + " is empty");

    QaResponse r;
    try {
        r = gateway.qa(question, span.text);
    } catch (const GatewayError& e) {
        throw e.with_span(span.span_id);
    }

    auto violation = [&](const std::string& what) {
        return GatewayError(GatewayErrorKind::protocol_violation, what, span.span_id);
    };
    if (!std::isfinite(r.score) || r.score < 0.0 || r.score > 1.0) {
        throw violation("answer confidence outside [0,1]: " + std::to_string(r.score));
    }
    if (r.answer_start > r.answer_end || r.answer_end > span.text.size()) {
        throw violation("answer offsets [" + std::to_string(r.answer_start) + ", " + std::to_string(r.answer_end) +
                        ") outside span of length " + std::to_string(span.text.size()));
    }
    if (r.no_answer()) return ExtractedAnswer::none(span.span_id, r.score);
    if (r.answer_start == r.answer_end) {
        throw violation("zero-length answer at offset " + std::to_string(r.answer_start));
    }
    if (!on_codepoint_boundary(span.text, r.answer_start) || !on_codepoint_boundary(span.text, r.answer_end)) {
        throw violation("answer offsets split a UTF-8 sequence");
    }

    ExtractedAnswer a;
    a.span_id = span.span_id;
    a.char_start = r.answer_start;
    a.char_end = r.answer_end;
    a.answer_text = span.text.substr(r.answer_start, r.answer_end - r.answer_start);
    a.confidence = r.score;
    a.empty = false;
    return a;
}

}  // namespace lexqa

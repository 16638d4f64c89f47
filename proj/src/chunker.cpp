#include "lexqa/chunker.hpp"

#include "lexqa/text.hpp"

#include <cstdlib>
#include <stdexcept>

namespace lexqa {

std::vector<std::string> ContextSpan::sentence_texts() const {
    std::vector<std::string> out;
    out.reserve(segments.size());
    for (const auto& seg : segments) out.emplace_back(segment_text(seg));
    return out;
}

std::string make_span_id(std::string_view doc_id, std::size_t ordinal) {
    return std::string(doc_id) + "#" + std::to_string(ordinal);
}

namespace {

class Partitioner {
public:
    Partitioner(const NormalizedDocument& doc, std::size_t limit, const TokenCounter& counter)
        : doc_(doc), text_(doc.normalized_text), limit_(limit), counter_(counter) {
        sentence_tokens_.reserve(doc.sentences.size());
        for (const auto& s : doc.sentences) sentence_tokens_.push_back(counter_(s.text));
    }

    std::vector<ContextSpan> run() {
        const auto& sentences = doc_.sentences;
        std::size_t first = 0;
        while (first < sentences.size()) {
            std::size_t last = first + 1;
            while (last < sentences.size() && sentences[last].paragraph == sentences[first].paragraph) ++last;
            place_sentences(first, last);
            first = last;
        }
        return std::move(spans_);
    }

private:
    // Sentences [first, last) as one candidate span.
    void place_sentences(std::size_t first, std::size_t last) {
        const auto& sentences = doc_.sentences;
        const std::size_t begin = sentences[first].char_start;
        const std::size_t end = sentences[last - 1].char_end;
        const std::size_t tokens =
            (last - first == 1) ? sentence_tokens_[first] : counter_(text_.substr(begin, end - begin));
        if (tokens <= limit_) {
            emit(first, last - 1, begin, end, tokens, false);
            return;
        }
        if (last - first == 1) {
            place_fragment(first, begin, end);
            return;
        }
        std::size_t total = 0;
        for (std::size_t i = first; i < last; ++i) total += sentence_tokens_[i];
        std::size_t best = first + 1;
        long long best_gap = -1;
        std::size_t left = 0;
        for (std::size_t cut = first + 1; cut < last; ++cut) {
            left += sentence_tokens_[cut - 1];
            const long long gap = std::llabs(2 * static_cast<long long>(left) - static_cast<long long>(total));
            if (best_gap < 0 || gap < best_gap) {
                best_gap = gap;
                best = cut;
            }
        }
        place_sentences(first, best);
        place_sentences(best, last);
    }

    // Bytes [begin, end) of sentence `index`, which on its own exceeds the limit.
    void place_fragment(std::size_t index, std::size_t begin, std::size_t end) {
        const std::string_view piece = text_.substr(begin, end - begin);
        const std::size_t tokens = counter_(piece);
        if (tokens <= limit_) {
            emit(index, index, begin, end, tokens, true);
            return;
        }
        const auto words = whitespace_token_ranges(piece);
        if (words.size() >= 2) {
            const std::size_t mid = words.size() / 2;
            place_fragment(index, begin, begin + words[mid - 1].second);
            place_fragment(index, begin + words[mid].first, end);
            return;
        }
        const std::size_t cps = codepoint_count(piece);
        if (cps < 2) {
            throw std::invalid_argument("cannot fit a single character of sentence " + std::to_string(index) +
                                     " within " + std::to_string(limit_) + " tokens");
        }
        const std::size_t cut = *codepoint_to_byte(piece, cps / 2);
        place_fragment(index, begin, begin + cut);
        place_fragment(index, begin + cut, end);
    }

    void emit(std::size_t first, std::size_t last, std::size_t begin, std::size_t end, std::size_t tokens,
              bool partial) {
        ContextSpan span;
        span.ordinal = spans_.size();
        span.doc_id = doc_.doc_id;
        span.span_id = make_span_id(doc_.doc_id, span.ordinal);
        span.char_start = begin;
        span.char_end = end;
        span.text = std::string(text_.substr(begin, end - begin));
        span.first_sentence = first;
        span.last_sentence = last;
        span.token_count = tokens;
        span.partial = partial;
        if (partial) {
            span.segments.push_back({first, 0, end - begin});
        } else {
            for (std::size_t i = first; i <= last; ++i) {
                const auto& s = doc_.sentences[i];
                span.segments.push_back({i, s.char_start - begin, s.char_end - begin});
            }
        }
        spans_.push_back(std::move(span));
    }

    const NormalizedDocument& doc_;
    std::string_view text_;
    std::size_t limit_;
    const TokenCounter& counter_;
    std::vector<std::size_t> sentence_tokens_;
    std::vector<ContextSpan> spans_;
};

}  // namespace

std::vector<ContextSpan> partition(const NormalizedDocument& doc, std::size_t max_span_tokens,
                                   const TokenCounter& counter) {
    if (max_span_tokens < 1) throw std::invalid_argument("max_span_tokens must be at least 1");
    if (doc.sentences.empty()) throw std::invalid_argument("document has no sentences");
    return Partitioner(doc, max_span_tokens, counter).run();
}

}  // namespace lexqa

#pragma once

#include "lexqa/report.hpp"
#include "lexqa/text.hpp"

#include <random>
#include <string>
#include <vector>

namespace lexqa::testing {

/// Random reports whose span texts mix markup-significant characters,
/// multi-byte code points and plain words.
inline QueryReport random_report(std::mt19937_64& rng) {
    static const char* kPieces[] = {"data", " ", "breach", "&", "<", ">", "\"", "'", "*", "_", "#", "[x]",
                                    "\xC3\xA9", "\xE2\x82\xAC", "\xF0\x9F\x93\x9C", "72 hours", "\n", "&amp;",
                                    "<mark>", "\\", "`"};
    std::uniform_int_distribution<std::size_t> pick(0, std::size(kPieces) - 1);
    std::uniform_int_distribution<int> len(1, 40);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    QueryReport r;
    r.question = "What about <" + std::string(kPieces[pick(rng)]) + ">?";
    r.doc_id = "0123456789abcdef";
    r.doc_title = std::string("Title ") + kPieces[pick(rng)];
    r.scorer_id = "stub-jaccard";
    r.generated_at = "2024-01-02T03:04:05Z";
    const std::size_t entries = rng() % 6;
    r.n = entries + rng() % 3;
    if (r.n == 0) r.n = 1;
    for (std::size_t i = 0; i < entries; ++i) {
        ReportEntry e;
        e.rank = i + 1;
        e.span_id = r.doc_id + "#" + std::to_string(rng() % 500);
        const int pieces = len(rng);
        for (int p = 0; p < pieces; ++p) e.span_text += kPieces[pick(rng)];
        e.score = unit(rng);
        e.answer.span_id = e.span_id;
        if (rng() % 4 != 0) {
            const std::size_t cps = codepoint_count(e.span_text);
            std::size_t a = rng() % (cps + 1);
            std::size_t b = rng() % (cps + 1);
            if (a > b) std::swap(a, b);
            if (a == b) b = std::min(cps, b + 1);
            if (a < b) {
                e.answer.char_start = *codepoint_to_byte(e.span_text, a);
                e.answer.char_end = *codepoint_to_byte(e.span_text, b);
                e.answer.answer_text = e.span_text.substr(e.answer.char_start, e.answer.char_end - e.answer.char_start);
                e.answer.empty = false;
            }
        }
        e.answer.confidence = unit(rng);
        r.entries.push_back(std::move(e));
    }
    return r;
}

inline std::string html_unescape(std::string_view s) {
    static const std::pair<std::string_view, char> kEntities[] = {
        {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}};
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        bool matched = false;
        if (s[i] == '&') {
            for (const auto& [entity, c] : kEntities) {
                if (s.substr(i, entity.size()) == entity) {
                    out.push_back(c);
                    i += entity.size();
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) out.push_back(s[i++]);
    }
    return out;
}

/// The contents of every <p class="span-text"> element with <mark> tags
/// removed and entities decoded.
inline std::vector<std::string> span_texts_from_html(const std::string& html) {
    static const std::string kOpen = "<p class=\"span-text\">";
    std::vector<std::string> out;
    std::size_t pos = 0;
    while ((pos = html.find(kOpen, pos)) != std::string::npos) {
        pos += kOpen.size();
        const std::size_t end = html.find("</p>", pos);
        std::string inner = html.substr(pos, end - pos);
        for (const std::string tag : {"<mark>", "</mark>"}) {
            for (std::size_t t; (t = inner.find(tag)) != std::string::npos;) inner.erase(t, tag.size());
        }
        out.push_back(html_unescape(inner));
        pos = end;
    }
    return out;
}

}  // namespace lexqa::testing

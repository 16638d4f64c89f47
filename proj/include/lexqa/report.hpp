#pragma once

// The user-facing result of one question: the top-N spans with their
// highlighted answers, rendered as JSON, Markdown or HTML.
//
// Canonical JSON (answer offsets are code points into span_text):
//   {"question", "doc_id", "doc_title", "scorer_id", "n", "generated_at",
//    "entries": [{"rank", "span_id", "span_text", "score",
//                 "answer": {"start", "end", "text", "confidence", "empty"}}]}

#include "lexqa/chunker.hpp"
#include "lexqa/extraction.hpp"
#include "lexqa/ranking.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

struct ReportEntry {
    std::size_t rank = 0;
    std::string span_id;
    std::string span_text;
    double score = 0.0;
    ExtractedAnswer answer;

    friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

struct QueryReport {
    std::string question;
    std::string doc_id;
    std::string doc_title;
    std::string scorer_id;
    std::size_t n = 0;
    std::string generated_at;  // ISO-8601 UTC
    std::vector<ReportEntry> entries;

    friend bool operator==(const QueryReport&, const QueryReport&) = default;
};

struct ReportMeta {
    std::string doc_id;
    std::string doc_title;
    std::string scorer_id;
    std::size_t n = 0;
    std::string generated_at;
};

/// Joins ranked spans with their answers (answers[i] belongs to ranked[i]).
/// `spans` is the document's full span list, indexed by ordinal. Throws
/// std::invalid_argument when the two lists are not aligned.
QueryReport assemble_report(std::string question, const std::vector<RankedSpan>& ranked,
                            const std::vector<ExtractedAnswer>& answers, const std::vector<ContextSpan>& spans,
                            ReportMeta meta);

enum class ReportFormat { json, markdown, html };

ReportFormat parse_report_format(std::string_view s);

nlohmann::json report_to_json(const QueryReport& report);

/// Inverse of report_to_json; validates offsets against each span text.
QueryReport report_from_json(const nlohmann::json& j);

std::string render(const QueryReport& report, ReportFormat format);

/// "%.2f" formatting used for scores and confidences in human formats.
std::string format_fixed2(double value);

std::string html_escape(std::string_view s);
std::string markdown_escape(std::string_view s);

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

}  // namespace lexqa

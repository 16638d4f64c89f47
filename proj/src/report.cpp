#include "lexqa/report.hpp"

#include "lexqa/text.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace lexqa {

using nlohmann::json;

QueryReport assemble_report(std::string question, const std::vector<RankedSpan>& ranked,
                            const std::vector<ExtractedAnswer>& answers, const std::vector<ContextSpan>& spans,
                            ReportMeta meta) {
    if (ranked.size() != answers.size()) {
        throw std::invalid_argument("report: " + std::to_string(answers.size()) + " answers for " +
                                    std::to_string(ranked.size()) + " ranked spans");
    }
    QueryReport report;
    report.question = std::move(question);
    report.doc_id = std::move(meta.doc_id);
    report.doc_title = std::move(meta.doc_title);
    report.scorer_id = std::move(meta.scorer_id);
    report.n = meta.n;
    report.generated_at = std::move(meta.generated_at);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const auto& r = ranked[i];
        if (answers[i].span_id != r.span_id) {
            throw std::invalid_argument("report: answer for " + answers[i].span_id + " aligned with span " + r.span_id);
        }
        if (r.ordinal >= spans.size() || spans[r.ordinal].span_id != r.span_id) {
            throw std::invalid_argument("report: unknown span " + r.span_id);
        }
        report.entries.push_back({r.rank, r.span_id, spans[r.ordinal].text, r.score, answers[i]});
    }
    return report;
}

ReportFormat parse_report_format(std::string_view s) {
    if (s == "json") return ReportFormat::json;
    if (s == "md" || s == "markdown") return ReportFormat::markdown;
    if (s == "html") return ReportFormat::html;
    throw std::invalid_argument("unknown report format: " + std::string(s));
}

// ---------------------------------------------------------------------------
// JSON

json report_to_json(const QueryReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        const auto& a = e.answer;
        entries.push_back({
            {"rank", e.rank},
            {"span_id", e.span_id},
            {"span_text", e.span_text},
            {"score", e.score},
            {"answer",
             {{"start", byte_to_codepoint(e.span_text, a.char_start)},
              {"end", byte_to_codepoint(e.span_text, a.char_end)},
              {"text", a.answer_text},
              {"confidence", a.confidence},
              {"empty", a.empty}}},
        });
    }
    return {
        {"question", report.question},   {"doc_id", report.doc_id},
        {"doc_title", report.doc_title}, {"scorer_id", report.scorer_id},
        {"n", report.n},                 {"generated_at", report.generated_at},
        {"entries", std::move(entries)},
    };
}

QueryReport report_from_json(const json& j) {
    QueryReport r;
    r.question = j.at("question").get<std::string>();
    r.doc_id = j.at("doc_id").get<std::string>();
    r.doc_title = j.at("doc_title").get<std::string>();
    r.scorer_id = j.at("scorer_id").get<std::string>();
    r.n = j.at("n").get<std::size_t>();
    r.generated_at = j.at("generated_at").get<std::string>();
    for (const auto& je : j.at("entries")) {
        ReportEntry e;
        e.rank = je.at("rank").get<std::size_t>();
        e.span_id = je.at("span_id").get<std::string>();
        e.span_text = je.at("span_text").get<std::string>();
        e.score = je.at("score").get<double>();
        const auto& ja = je.at("answer");
        auto start = codepoint_to_byte(e.span_text, ja.at("start").get<std::size_t>());
        auto end = codepoint_to_byte(e.span_text, ja.at("end").get<std::size_t>());
        if (!start || !end || *start > *end) {
            throw std::invalid_argument("report entry " + e.span_id + ": answer offsets outside span text");
        }
        e.answer.span_id = e.span_id;
        e.answer.char_start = *start;
        e.answer.char_end = *end;
        e.answer.answer_text = ja.at("text").get<std::string>();
        e.answer.confidence = ja.at("confidence").get<double>();
        e.answer.empty = ja.at("empty").get<bool>();
        if (!e.answer.empty && e.span_text.substr(*start, *end - *start) != e.answer.answer_text) {
            throw std::invalid_argument("report entry " + e.span_id + ": answer text does not match its offsets");
        }
        r.entries.push_back(std::move(e));
    }
    if (r.entries.size() > r.n) throw std::invalid_argument("report holds more entries than n");
    return r;
}

// ---------------------------------------------------------------------------
// Human formats

std::string format_fixed2(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string markdown_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '\\': case '`': case '*': case '_': case '[': case ']': case '<': case '>': case '#':
                out.push_back('\\');
                [[fallthrough]];
            default: out.push_back(c);
        }
    }
    return out;
}

namespace {

std::string render_html(const QueryReport& r) {
    std::ostringstream out;
    out << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
        << "<title>" << html_escape(r.question) << "</title>\n"
        << "<style>\n"
           "body{font-family:sans-serif;max-width:50em;margin:2em auto;line-height:1.5}\n"
           "mark{background:#bff0bf}\n"
           ".meta,.score,.confidence{color:#555;font-size:.9em}\n"
           "</style>\n</head>\n<body>\n";
    out << "<h1>" << html_escape(r.question) << "</h1>\n";
    out << "<p class=\"meta\">Document: " << html_escape(r.doc_title) << " (<code>" << html_escape(r.doc_id)
        << "</code>) &middot; scorer: <code>" << html_escape(r.scorer_id) << "</code> &middot; top-" << r.n
        << " &middot; " << html_escape(r.generated_at) << "</p>\n";
    if (r.entries.empty()) out << "<p class=\"empty\">No context spans were retrieved.</p>\n";
    out << "<ol class=\"entries\">\n";
    for (const auto& e : r.entries) {
        const auto& a = e.answer;
        out << "<li class=\"entry\" data-rank=\"" << e.rank << "\" data-span-id=\"" << html_escape(e.span_id)
            << "\">\n";
        out << "<p class=\"score\">Span <code>" << html_escape(e.span_id) << "</code>, relevance "
            << format_fixed2(e.score) << "</p>\n";
        out << "<p class=\"span-text\">";
        if (a.empty) {
            out << html_escape(e.span_text);
        } else {
            const std::string_view text = e.span_text;
            out << html_escape(text.substr(0, a.char_start)) << "<mark>"
                << html_escape(text.substr(a.char_start, a.char_end - a.char_start)) << "</mark>"
                << html_escape(text.substr(a.char_end));
        }
        out << "</p>\n";
        if (a.empty) {
            out << "<p class=\"confidence none\">No answer highlighted.</p>\n";
        } else {
            out << "<p class=\"confidence\">Answer confidence: " << format_fixed2(a.confidence) << "</p>\n";
        }
        out << "</li>\n";
    }
    out << "</ol>\n</body>\n</html>\n";
    return out.str();
}

std::string render_markdown(const QueryReport& r) {
    std::ostringstream out;
    out << "# " << markdown_escape(r.question) << "\n\n";
    out << "- Document: " << markdown_escape(r.doc_title) << " (`" << r.doc_id << "`)\n";
    out << "- Scorer: `" << r.scorer_id << "`\n";
    out << "- Top-N: " << r.n << "\n";
    out << "- Generated: " << r.generated_at << "\n\n";
    if (r.entries.empty()) out << "_No context spans were retrieved._\n";
    for (const auto& e : r.entries) {
        const auto& a = e.answer;
        out << "## " << e.rank << ". Span `" << e.span_id << "` (score " << format_fixed2(e.score) << ")\n\n";
        if (a.empty) {
            out << markdown_escape(e.span_text) << "\n\n_No answer highlighted._\n\n";
        } else {
            const std::string_view text = e.span_text;
            out << markdown_escape(text.substr(0, a.char_start)) << "**"
                << markdown_escape(text.substr(a.char_start, a.char_end - a.char_start)) << "** (confidence: "
                << format_fixed2(a.confidence) << ")" << markdown_escape(text.substr(a.char_end)) << "\n\n";
        }
    }
    return out.str();
}

}  // namespace

std::string render(const QueryReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return report_to_json(report).dump(2) + "\n";
        case ReportFormat::markdown: return render_markdown(report);
        case ReportFormat::html: return render_html(report);
    }
    throw std::invalid_argument("unknown report format");
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace lexqa

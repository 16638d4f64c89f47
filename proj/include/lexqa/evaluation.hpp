#pragma once

// Retrieval accuracy@N, answer exact-match / token-F1 and latency over a gold
// dataset.
//
// Gold file (JSON Lines): an optional header line
//   {"partition_config": {"max_span_tokens": int, "counter": "word"|"backend", "ruleset_id": str}}
// followed by one entry per line
//   {"question": str, "doc_id": str, "gold_span_ids": [str], "gold_answers": [str]}
//
// Results file (JSON Lines), one per answered question:
//   {"question": str, "doc_id": str, "ranked_span_ids": [str], "answers": [str], "latency_seconds": number}

#include "lexqa/report.hpp"

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

struct GoldEntry {
    std::string question;
    std::string doc_id;
    std::vector<std::string> gold_span_ids;
    std::vector<std::string> gold_answers;
};

struct GoldPartitionConfig {
    std::size_t max_span_tokens = 512;
    std::string counter = "word";
    std::string ruleset_id;
};

struct GoldDataset {
    std::optional<GoldPartitionConfig> partition;
    std::vector<GoldEntry> entries;
};

/// Throws std::invalid_argument (with the line number) on malformed lines or
/// entries with empty gold sets.
GoldDataset parse_gold(std::istream& in);
GoldDataset load_gold(const std::string& path);

/// Pipeline output for one gold question. `answers` holds the extracted
/// answer text of each ranked span ("" for no answer), in rank order.
struct QuestionResult {
    std::string question;
    std::string doc_id;
    std::vector<std::string> ranked_span_ids;
    std::vector<std::string> answers;
    double latency_seconds = 0.0;
};

QuestionResult result_from_report(const QueryReport& report, double latency_seconds);

std::vector<QuestionResult> parse_results(std::istream& in);
nlohmann::json result_to_json(const QuestionResult& r);

/// Lowercase, drop punctuation and the articles a/an/the, collapse whitespace.
std::string normalize_answer(std::string_view s);

/// Harmonic mean of token precision and recall of normalized answers. Two
/// empty answers score 1; one empty answer scores 0.
double token_f1(std::string_view prediction, std::string_view gold);

/// 1 when the normalized prediction equals the normalized gold answer.
bool exact_match(std::string_view prediction, std::string_view gold);

/// Pairs each gold entry with its result, matching on (doc_id, question).
/// Throws NotFoundError when a gold question has no result.
std::vector<const QuestionResult*> align_results(const std::vector<QuestionResult>& results,
                                                 const std::vector<GoldEntry>& gold);

/// Fraction of gold questions with any gold span among the first n ranked spans.
double retrieval_accuracy_at_n(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold,
                               std::size_t n);

struct AnswerAccuracy {
    double exact_match = 0.0;
    double token_f1 = 0.0;
};

/// A question's EM and F1 are the best over its extracted answers and gold
/// answers; the aggregate is the mean over questions.
AnswerAccuracy answer_accuracy(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold);

struct QuestionOutcome {
    std::string question;
    std::string doc_id;
    bool hit = false;
    std::optional<std::size_t> hit_rank;  // 1-based rank of the first gold span
    double exact_match = 0.0;
    double token_f1 = 0.0;
    double latency_seconds = 0.0;
};

struct EvalReport {
    std::size_t n = 0;
    std::size_t total_questions = 0;
    std::size_t retrieval_hits = 0;
    double retrieval_accuracy_at_n = 0.0;
    double answer_exact_match = 0.0;
    double answer_token_f1 = 0.0;
    double mean_latency_seconds = 0.0;
    std::vector<QuestionOutcome> per_question;
};

EvalReport evaluate(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold, std::size_t n);

nlohmann::json eval_report_to_json(const EvalReport& report);
std::string eval_report_markdown(const EvalReport& report);

/// Mean wall-clock seconds of `runs` executions of `ask` (at least 3).
/// Throws std::invalid_argument for an empty question before timing.
double time_query(const std::function<void(std::string_view)>& ask, std::string_view question, int runs = 3);

}  // namespace lexqa

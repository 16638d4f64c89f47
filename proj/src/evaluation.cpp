#include "lexqa/evaluation.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/text.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace lexqa {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Gold and results files

namespace {

std::vector<std::string> string_list(const json& j, const char* field) {
    const auto& arr = j.at(field);
    if (!arr.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
    std::vector<std::string> out;
    for (const auto& v : arr) out.push_back(v.get<std::string>());
    return out;
}

template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            fn(json::parse(line), line_no);
        } catch (const json::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
}

}  // namespace

GoldDataset parse_gold(std::istream& in) {
    GoldDataset data;
    for_each_json_line(in, [&](const json& j, std::size_t line_no) {
        if (j.contains("partition_config")) {
            if (!data.entries.empty() || data.partition) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": partition_config must be the first line");
            }
            const auto& pc = j["partition_config"];
            GoldPartitionConfig cfg;
            cfg.max_span_tokens = pc.value("max_span_tokens", std::size_t{512});
            cfg.counter = pc.value("counter", std::string("word"));
            cfg.ruleset_id = pc.value("ruleset_id", std::string());
            data.partition = cfg;
            return;
        }
        GoldEntry e;
        e.question = j.at("question").get<std::string>();
        e.doc_id = j.at("doc_id").get<std::string>();
        e.gold_span_ids = string_list(j, "gold_span_ids");
        e.gold_answers = string_list(j, "gold_answers");
        if (trim(e.question).empty() || e.gold_span_ids.empty() || e.gold_answers.empty()) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": gold entries need a question, gold_span_ids and gold_answers");
        }
        data.entries.push_back(std::move(e));
    });
    return data;
}

GoldDataset load_gold(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open gold file: " + path);
    return parse_gold(in);
}

QuestionResult result_from_report(const QueryReport& report, double latency_seconds) {
    QuestionResult r;
    r.question = report.question;
    r.doc_id = report.doc_id;
    for (const auto& e : report.entries) {
        r.ranked_span_ids.push_back(e.span_id);
        r.answers.push_back(e.answer.empty ? std::string() : e.answer.answer_text);
    }
    r.latency_seconds = latency_seconds;
    return r;
}

std::vector<QuestionResult> parse_results(std::istream& in) {
    std::vector<QuestionResult> out;
    for_each_json_line(in, [&](const json& j, std::size_t) {
        QuestionResult r;
        r.question = j.at("question").get<std::string>();
        r.doc_id = j.at("doc_id").get<std::string>();
        r.ranked_span_ids = string_list(j, "ranked_span_ids");
        if (j.contains("answers")) r.answers = string_list(j, "answers");
        r.latency_seconds = j.value("latency_seconds", 0.0);
        out.push_back(std::move(r));
    });
    return out;
}

json result_to_json(const QuestionResult& r) {
    return {{"question", r.question},
            {"doc_id", r.doc_id},
            {"ranked_span_ids", r.ranked_span_ids},
            {"answers", r.answers},
            {"latency_seconds", r.latency_seconds}};
}

// ---------------------------------------------------------------------------
// Answer metrics

std::string normalize_answer(std::string_view s) {
    std::string cleaned;
    cleaned.reserve(s.size());
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (u < 0x80 && !is_word_char(c) && !is_space(c)) continue;  // ASCII punctuation
        cleaned.push_back(c);
    }
    cleaned = to_lower_ascii(cleaned);
    std::string out;
    for (auto tok : whitespace_tokens(cleaned)) {
        if (tok == "a" || tok == "an" || tok == "the") continue;
        if (!out.empty()) out.push_back(' ');
        out.append(tok);
    }
    return out;
}

bool exact_match(std::string_view prediction, std::string_view gold) {
    return normalize_answer(prediction) == normalize_answer(gold);
}

double token_f1(std::string_view prediction, std::string_view gold) {
    const std::string p = normalize_answer(prediction);
    const std::string g = normalize_answer(gold);
    const auto pt = whitespace_tokens(p);
    const auto gt = whitespace_tokens(g);
    if (pt.empty() || gt.empty()) return pt.empty() && gt.empty() ? 1.0 : 0.0;
    std::map<std::string_view, std::size_t> counts;
    for (auto t : gt) ++counts[t];
    std::size_t common = 0;
    for (auto t : pt) {
        auto it = counts.find(t);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++common;
        }
    }
    if (common == 0) return 0.0;
    const double precision = static_cast<double>(common) / static_cast<double>(pt.size());
    const double recall = static_cast<double>(common) / static_cast<double>(gt.size());
    return 2.0 * precision * recall / (precision + recall);
}

// ---------------------------------------------------------------------------
// Aggregates

std::vector<const QuestionResult*> align_results(const std::vector<QuestionResult>& results,
                                                 const std::vector<GoldEntry>& gold) {
    std::map<std::pair<std::string, std::string>, std::vector<const QuestionResult*>> by_key;
    for (auto it = results.rbegin(); it != results.rend(); ++it) by_key[{it->doc_id, it->question}].push_back(&*it);
    std::vector<const QuestionResult*> out;
    out.reserve(gold.size());
    for (const auto& g : gold) {
        auto it = by_key.find({g.doc_id, g.question});
        if (it == by_key.end() || it->second.empty()) {
            throw NotFoundError("no result for gold question \"" + g.question + "\" on document " + g.doc_id);
        }
        out.push_back(it->second.back());
        it->second.pop_back();
    }
    return out;
}

namespace {

std::optional<std::size_t> first_hit(const QuestionResult& r, const GoldEntry& g, std::size_t n) {
    const std::size_t limit = std::min(n, r.ranked_span_ids.size());
    for (std::size_t i = 0; i < limit; ++i) {
        if (std::find(g.gold_span_ids.begin(), g.gold_span_ids.end(), r.ranked_span_ids[i]) != g.gold_span_ids.end()) {
            return i + 1;
        }
    }
    return std::nullopt;
}

std::pair<double, double> best_answer_scores(const QuestionResult& r, const GoldEntry& g) {
    double em = 0.0;
    double f1 = 0.0;
    for (const auto& a : r.answers) {
        if (trim(a).empty()) continue;
        for (const auto& ga : g.gold_answers) {
            if (exact_match(a, ga)) em = 1.0;
            f1 = std::max(f1, token_f1(a, ga));
        }
    }
    return {em, f1};
}

}  // namespace

double retrieval_accuracy_at_n(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold,
                               std::size_t n) {
    if (n < 1) throw std::invalid_argument("top-n must be at least 1");
    if (gold.empty()) return 0.0;
    const auto aligned = align_results(results, gold);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) hits += first_hit(*aligned[i], gold[i], n).has_value();
    return static_cast<double>(hits) / static_cast<double>(gold.size());
}

AnswerAccuracy answer_accuracy(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold) {
    if (gold.empty()) return {};
    const auto aligned = align_results(results, gold);
    AnswerAccuracy acc;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        auto [em, f1] = best_answer_scores(*aligned[i], gold[i]);
        acc.exact_match += em;
        acc.token_f1 += f1;
    }
    acc.exact_match /= static_cast<double>(gold.size());
    acc.token_f1 /= static_cast<double>(gold.size());
    return acc;
}

EvalReport evaluate(const std::vector<QuestionResult>& results, const std::vector<GoldEntry>& gold, std::size_t n) {
    if (n < 1) throw std::invalid_argument("top-n must be at least 1");
    const auto aligned = align_results(results, gold);
    EvalReport report;
    report.n = n;
    report.total_questions = gold.size();
    double em_sum = 0.0;
    double f1_sum = 0.0;
    double latency_sum = 0.0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        const auto& r = *aligned[i];
        QuestionOutcome o;
        o.question = gold[i].question;
        o.doc_id = gold[i].doc_id;
        o.hit_rank = first_hit(r, gold[i], n);
        o.hit = o.hit_rank.has_value();
        std::tie(o.exact_match, o.token_f1) = best_answer_scores(r, gold[i]);
        o.latency_seconds = r.latency_seconds;
        report.retrieval_hits += o.hit;
        em_sum += o.exact_match;
        f1_sum += o.token_f1;
        latency_sum += o.latency_seconds;
        report.per_question.push_back(std::move(o));
    }
    if (!gold.empty()) {
        const double total = static_cast<double>(gold.size());
        report.retrieval_accuracy_at_n = static_cast<double>(report.retrieval_hits) / total;
        report.answer_exact_match = em_sum / total;
        report.answer_token_f1 = f1_sum / total;
        report.mean_latency_seconds = latency_sum / total;
    }
    return report;
}

json eval_report_to_json(const EvalReport& report) {
    json per = json::array();
    for (const auto& o : report.per_question) {
        per.push_back({{"question", o.question},
                       {"doc_id", o.doc_id},
                       {"hit", o.hit},
                       {"hit_rank", o.hit_rank ? json(*o.hit_rank) : json(nullptr)},
                       {"exact_match", o.exact_match},
                       {"token_f1", o.token_f1},
                       {"latency_seconds", o.latency_seconds}});
    }
    return {{"n", report.n},
            {"total_questions", report.total_questions},
            {"retrieval_hits", report.retrieval_hits},
            {"retrieval_accuracy_at_n", report.retrieval_accuracy_at_n},
            {"answer_exact_match", report.answer_exact_match},
            {"answer_token_f1", report.answer_token_f1},
            {"mean_latency_seconds", report.mean_latency_seconds},
            {"per_question", std::move(per)}};
}

std::string eval_report_markdown(const EvalReport& report) {
    auto f4 = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", v);
        return std::string(buf);
    };
    std::ostringstream out;
    out << "| metric | value |\n|---|---|\n";
    out << "| questions | " << report.total_questions << " |\n";
    out << "| retrieval hits @" << report.n << " | " << report.retrieval_hits << " |\n";
    out << "| retrieval accuracy @" << report.n << " | " << f4(report.retrieval_accuracy_at_n) << " |\n";
    out << "| answer exact match | " << f4(report.answer_exact_match) << " |\n";
    out << "| answer token F1 | " << f4(report.answer_token_f1) << " |\n";
    out << "| mean latency (s) | " << f4(report.mean_latency_seconds) << " |\n";
    out << "\n| # | doc | hit rank | EM | F1 | latency (s) | question |\n|---|---|---|---|---|---|---|\n";
    std::size_t i = 0;
    for (const auto& o : report.per_question) {
        std::string q = o.question;
        std::replace(q.begin(), q.end(), '|', '/');
        out << "| " << ++i << " | `" << o.doc_id << "` | " << (o.hit_rank ? std::to_string(*o.hit_rank) : "-")
            << " | " << f4(o.exact_match) << " | " << f4(o.token_f1) << " | " << f4(o.latency_seconds) << " | " << q
            << " |\n";
    }
    return out.str();
}

double time_query(const std::function<void(std::string_view)>& ask, std::string_view question, int runs) {
    if (trim(question).empty()) throw std::invalid_argument("question is empty");
    runs = std::max(runs, 3);
    double total = 0.0;
    for (int i = 0; i < runs; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        ask(question);
        total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return total / runs;
}

}  // namespace lexqa

#include "lexqa/ingestion.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/text.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lexqa {

std::string content_doc_id(std::string_view title, std::string_view text) {
    std::string material;
    material.reserve(title.size() + 1 + text.size());
    material.append(title);
    material.push_back('\0');
    material.append(text);
    return sha256_hex(material).substr(0, 16);
}

RawDocument make_document(std::string title, std::string text, std::string source_uri) {
    if (trim(text).empty()) throw std::invalid_argument("document text is empty");
    if (!valid_utf8(text)) throw std::invalid_argument("document text is not valid UTF-8");
    RawDocument doc;
    doc.doc_id = content_doc_id(title, text);
    doc.title = std::move(title);
    doc.source_uri = std::move(source_uri);
    doc.raw_text = std::move(text);
    return doc;
}

RawDocument load_document(const std::filesystem::path& path, std::string title) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open document: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (title.empty()) title = path.stem().string();
    return make_document(std::move(title), buf.str(), path.string());
}

// ---------------------------------------------------------------------------
// Abbreviation rules

AbbreviationRules AbbreviationRules::legal_defaults() {
    return AbbreviationRules({"Art.", "Arts.", "No.", "Nos.", "par.", "subpar.", "e.g.", "i.e.", "cf.",
                              "etc."});
}

AbbreviationRules AbbreviationRules::parse(std::string_view contents) {
    std::vector<std::string> entries;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= contents.size()) {
        std::size_t eol = contents.find('\n', pos);
        if (eol == std::string_view::npos) eol = contents.size();
        ++line_no;
        std::string_view line = contents.substr(pos, eol - pos);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) {
            if (whitespace_tokens(line).size() != 1) {
                throw std::invalid_argument("abbreviation rules line " + std::to_string(line_no) +
                                            ": expected a single token");
            }
            entries.emplace_back(line);
        }
        pos = eol + 1;
    }
    return AbbreviationRules(std::move(entries));
}

AbbreviationRules AbbreviationRules::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NotFoundError("cannot open abbreviation rules: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

AbbreviationRules::AbbreviationRules(std::vector<std::string> entries) {
    std::set<std::string> unique;
    for (auto& e : entries) {
        if (e.size() < 2 || e.back() != '.' || e[e.size() - 2] == '.') {
            throw std::invalid_argument("abbreviation must end in a single '.': " + e);
        }
        if (std::any_of(e.begin(), e.end(), [](char c) { return is_space(c); })) {
            throw std::invalid_argument("abbreviation contains whitespace: " + e);
        }
        unique.insert(std::move(e));
    }
    std::string canonical;
    for (const auto& e : unique) {
        canonical += e;
        canonical.push_back('\n');
    }
    id_ = "abbr-" + sha256_hex(canonical).substr(0, 12);
    entries_.assign(unique.begin(), unique.end());
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

bool left_boundary(std::string_view s, std::size_t i) {
    return i == 0 || (!is_word_char(s[i - 1]) && s[i - 1] != '.');
}

bool right_boundary(std::string_view s, std::size_t end) {
    return end == s.size() || (!is_word_char(s[end]) && s[end] != '.');
}

std::string normalize_pass(std::string_view text, const std::vector<std::string>& rules) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        bool matched = false;
        if (left_boundary(text, i)) {
            for (const auto& abbr : rules) {
                if (text.substr(i).starts_with(abbr) && right_boundary(text, i + abbr.size())) {
                    out.append(abbr, 0, abbr.size() - 1);
                    i += abbr.size();
                    matched = true;
                    break;
                }
            }
        }
        if (!matched) out.push_back(text[i++]);
    }
    return out;
}

}  // namespace

std::string normalize_text(std::string_view raw, const AbbreviationRules& rules) {
    // Each pass only removes characters, so iterating to a fixpoint terminates
    // and makes the result idempotent by construction.
    std::string current(raw);
    for (;;) {
        std::string next = normalize_pass(current, rules.entries());
        if (next.size() == current.size()) return current;
        current = std::move(next);
    }
}

// ---------------------------------------------------------------------------
// Sentence splitting

namespace {

bool is_terminator(char c) { return c == '.' || c == '?' || c == '!' || c == ';'; }

bool is_closer(char c) { return c == ')' || c == ']' || c == '"' || c == '\''; }

}  // namespace

std::vector<Sentence> split_sentences(std::string_view text) {
    std::vector<Sentence> out;
    constexpr auto npos = std::string_view::npos;
    std::size_t start = npos;
    std::size_t last_end = 0;  // one past the last non-space byte seen
    std::size_t paragraph = 0;
    bool paragraph_used = false;

    auto emit = [&](std::size_t b, std::size_t e) {
        Sentence s;
        s.index = out.size();
        s.char_start = b;
        s.char_end = e;
        s.paragraph = paragraph;
        s.text = std::string(text.substr(b, e - b));
        out.push_back(std::move(s));
        paragraph_used = true;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (is_space(c)) {
            if (c == '\n') {
                std::size_t j = i + 1;
                while (j < text.size() && (text[j] == ' ' || text[j] == '\t' || text[j] == '\r')) ++j;
                if (j < text.size() && text[j] == '\n') {
                    if (start != npos) {
                        emit(start, last_end);
                        start = npos;
                    }
                    if (paragraph_used) {
                        ++paragraph;
                        paragraph_used = false;
                    }
                    i = j;
                    while (i < text.size() && is_space(text[i])) ++i;
                    continue;
                }
            }
            ++i;
            continue;
        }
        if (start == npos) start = i;
        if (is_terminator(c)) {
            std::size_t k = i + 1;
            while (k < text.size() && is_closer(text[k])) ++k;
            if (k == text.size() || is_space(text[k])) {
                emit(start, k);
                start = npos;
                last_end = k;
                i = k;
                continue;
            }
        }
        last_end = i + 1;
        ++i;
    }
    if (start != npos) emit(start, last_end);
    return out;
}

NormalizedDocument normalize_document(const RawDocument& doc, const AbbreviationRules& rules) {
    NormalizedDocument out;
    out.doc_id = doc.doc_id;
    out.title = doc.title;
    out.normalized_text = normalize_text(doc.raw_text, rules);
    out.sentences = split_sentences(out.normalized_text);
    out.abbreviation_ruleset_id = rules.id();
    return out;
}

// ---------------------------------------------------------------------------
// Token counting

const char* to_string(CountMode mode) noexcept {
    return mode == CountMode::word ? "word" : "backend";
}

CountMode parse_count_mode(std::string_view s) {
    if (s == "word") return CountMode::word;
    if (s == "backend") return CountMode::backend;
    throw std::invalid_argument("unknown token-count mode: " + std::string(s));
}

std::size_t count_tokens(std::string_view text) noexcept {
    std::size_t n = 0;
    bool in_token = false;
    for (char c : text) {
        if (is_space(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++n;
        }
    }
    return n;
}

TokenCounter::TokenCounter(CountMode mode, const ModelGateway* gateway) : mode_(mode), gateway_(gateway) {
    if (mode_ == CountMode::backend && gateway_ == nullptr) {
        throw GatewayError(GatewayErrorKind::not_configured,
                           "backend token counting requires a model gateway");
    }
}

std::size_t TokenCounter::operator()(std::string_view text) const {
    if (mode_ == CountMode::word) return count_tokens(text);
    return gateway_->token_count(text);
}

}  // namespace lexqa

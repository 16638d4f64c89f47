#pragma once

// Document loading, abbreviation normalization, sentence splitting and
// token counting.

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace lexqa {

class ModelGateway;

struct RawDocument {
    std::string doc_id;
    std::string title;
    std::string source_uri;
    std::string raw_text;
};

/// doc_id is the first 16 hex digits of sha256(title + '\0' + text), so
/// identical uploads map to the same id.
std::string content_doc_id(std::string_view title, std::string_view text);

RawDocument make_document(std::string title, std::string text, std::string source_uri = {});

/// Reads a UTF-8 plain-text file. The title defaults to the file stem.
RawDocument load_document(const std::filesystem::path& path, std::string title = {});

/// Abbreviations whose terminal period is dropped during normalization.
/// Every entry ends in a single '.', contains no whitespace, and is matched
/// case-sensitively as a whole token.
class AbbreviationRules {
public:
    /// Art., Arts., No., Nos., par., subpar., e.g., i.e., cf., etc.
    static AbbreviationRules legal_defaults();

    /// One abbreviation per line; '#' starts a comment; blank lines ignored.
    static AbbreviationRules parse(std::string_view contents);
    static AbbreviationRules from_file(const std::filesystem::path& path);

    explicit AbbreviationRules(std::vector<std::string> entries);

    const std::vector<std::string>& entries() const noexcept { return entries_; }

    /// "abbr-" + 12 hex digits of sha256 over the sorted entries.
    const std::string& id() const noexcept { return id_; }

private:
    std::vector<std::string> entries_;  // longest first
    std::string id_;
};

struct Sentence {
    std::size_t index = 0;
    std::size_t char_start = 0;  // byte offsets into normalized_text
    std::size_t char_end = 0;
    std::size_t paragraph = 0;
    std::string text;

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct NormalizedDocument {
    std::string doc_id;
    std::string title;
    std::string normalized_text;
    std::vector<Sentence> sentences;
    std::string abbreviation_ruleset_id;
};

/// Drops the terminal period of every listed abbreviation occurring as a
/// whole token ("Art. 33" -> "Art 33"). Idempotent.
std::string normalize_text(std::string_view raw, const AbbreviationRules& rules);

/// Splits at '.', '?', '!', ';' (plus trailing closing quotes/brackets) when
/// followed by whitespace or end of text, and at paragraph breaks (a line
/// break followed by a blank line). Sentence text is trimmed.
std::vector<Sentence> split_sentences(std::string_view normalized);

NormalizedDocument normalize_document(const RawDocument& doc, const AbbreviationRules& rules);

enum class CountMode { word, backend };

const char* to_string(CountMode mode) noexcept;
CountMode parse_count_mode(std::string_view s);

/// Number of maximal whitespace-delimited tokens.
std::size_t count_tokens(std::string_view text) noexcept;

/// Counts tokens either by the word heuristic or by asking the gateway's
/// token-count endpoint.
class TokenCounter {
public:
    TokenCounter() = default;
    TokenCounter(CountMode mode, const ModelGateway* gateway);

    std::size_t operator()(std::string_view text) const;
    CountMode mode() const noexcept { return mode_; }

private:
    CountMode mode_ = CountMode::word;
    const ModelGateway* gateway_ = nullptr;
};

}  // namespace lexqa

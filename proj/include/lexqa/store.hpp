#pragma once

// On-disk document store with a partition cache.
//
// Layout under the root directory:
//   manifest.json                   doc_id -> title, text file, cached partitions
//   docs/<doc_id>.txt               the uploaded text, verbatim
//   partitions/<doc_id>/<key>.json  spans for key "<max_tokens>-<counter>-<ruleset_id>"
//
// Cache files are a memo of partition(normalize(text), config); they are
// written once and never edited. The manifest is replaced atomically
// (write to a temporary file, then rename).

#include "lexqa/chunker.hpp"
#include "lexqa/ingestion.hpp"
#include "lexqa/pipeline.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

namespace lexqa {

struct DocumentSummary {
    std::string doc_id;
    std::string title;
    std::string source_uri;
    std::size_t sentence_count = 0;
    std::size_t span_count = 0;  // under the store's partition config
};

struct UploadResult {
    std::string doc_id;
    bool created = false;
    std::size_t span_count = 0;
};

std::string partition_cache_key(const PartitionConfig& config, const std::string& ruleset_id);

nlohmann::json spans_to_cache_json(const std::vector<ContextSpan>& spans);
std::vector<ContextSpan> spans_from_cache_json(const nlohmann::json& j);

class DocumentStore {
public:
    /// Opens (or creates) the store at `root`. `counter_gateway` is required
    /// only when partition.counter is backend.
    DocumentStore(std::filesystem::path root, AbbreviationRules rules, PartitionConfig partition,
                  const ModelGateway* counter_gateway = nullptr);

    /// Stores, normalizes and partitions the text. Identical (title, text)
    /// uploads return the same doc_id with created == false.
    UploadResult upload(const std::string& title, const std::string& text, const std::string& source_uri = {});

    std::vector<DocumentSummary> list() const;
    bool contains(const std::string& doc_id) const;

    /// Throws NotFoundError for unknown ids.
    DocumentSummary summary(const std::string& doc_id) const;
    RawDocument raw(const std::string& doc_id) const;
    NormalizedDocument normalized(const std::string& doc_id) const;

    /// Spans under the store's config, as cached at upload time.
    std::shared_ptr<const PreparedDocument> prepared(const std::string& doc_id) const;

    /// Spans under an arbitrary config: served from the cache when present,
    /// otherwise computed without touching the store.
    std::vector<ContextSpan> spans(const std::string& doc_id, const PartitionConfig& config) const;

    const PartitionConfig& partition_config() const noexcept { return partition_; }
    const AbbreviationRules& rules() const noexcept { return rules_; }
    const std::filesystem::path& root() const noexcept { return root_; }

private:
    struct Entry {
        std::string title;
        std::string source_uri;
        std::string text_file;
        std::size_t sentence_count = 0;
        std::map<std::string, std::pair<std::string, std::size_t>> partitions;  // key -> (file, span count)
    };

    void load_manifest();
    void save_manifest() const;
    const Entry& entry(const std::string& doc_id) const;  // caller holds the lock
    std::vector<ContextSpan> read_cached(const std::string& file) const;
    TokenCounter counter_for(CountMode mode) const;

    std::filesystem::path root_;
    AbbreviationRules rules_;
    PartitionConfig partition_;
    const ModelGateway* counter_gateway_;

    mutable std::shared_mutex mutex_;
    std::map<std::string, Entry> manifest_;

    mutable std::mutex prepared_mutex_;
    mutable std::map<std::string, std::shared_ptr<const PreparedDocument>> prepared_;
};

}  // namespace lexqa

#include "lexqa/store.hpp"

#include "lexqa/errors.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lexqa {

using nlohmann::json;
namespace fs = std::filesystem;

std::string partition_cache_key(const PartitionConfig& config, const std::string& ruleset_id) {
    return std::to_string(config.max_span_tokens) + "-" + to_string(config.counter) + "-" + ruleset_id;
}

json spans_to_cache_json(const std::vector<ContextSpan>& spans) {
    json arr = json::array();
    for (const auto& s : spans) {
        json segs = json::array();
        for (const auto& seg : s.segments) segs.push_back({seg.sentence, seg.start, seg.end});
        arr.push_back({{"span_id", s.span_id},
                       {"doc_id", s.doc_id},
                       {"ordinal", s.ordinal},
                       {"char_start", s.char_start},
                       {"char_end", s.char_end},
                       {"text", s.text},
                       {"first_sentence", s.first_sentence},
                       {"last_sentence", s.last_sentence},
                       {"token_count", s.token_count},
                       {"partial", s.partial},
                       {"segments", std::move(segs)}});
    }
    return {{"offsets", "utf8-bytes"}, {"spans", std::move(arr)}};
}

std::vector<ContextSpan> spans_from_cache_json(const json& j) {
    std::vector<ContextSpan> out;
    for (const auto& js : j.at("spans")) {
        ContextSpan s;
        s.span_id = js.at("span_id").get<std::string>();
        s.doc_id = js.at("doc_id").get<std::string>();
        s.ordinal = js.at("ordinal").get<std::size_t>();
        s.char_start = js.at("char_start").get<std::size_t>();
        s.char_end = js.at("char_end").get<std::size_t>();
        s.text = js.at("text").get<std::string>();
        s.first_sentence = js.at("first_sentence").get<std::size_t>();
        s.last_sentence = js.at("last_sentence").get<std::size_t>();
        s.token_count = js.at("token_count").get<std::size_t>();
        s.partial = js.at("partial").get<bool>();
        for (const auto& seg : js.at("segments")) {
            s.segments.push_back({seg.at(0).get<std::size_t>(), seg.at(1).get<std::size_t>(), seg.at(2).get<std::size_t>()});
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

void write_atomically(const fs::path& path, const std::string& contents) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << contents;
        if (!out.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

DocumentStore::DocumentStore(fs::path root, AbbreviationRules rules, PartitionConfig partition,
                             const ModelGateway* counter_gateway)
    : root_(std::move(root)), rules_(std::move(rules)), partition_(partition), counter_gateway_(counter_gateway) {
    if (partition_.max_span_tokens < 1) throw std::invalid_argument("max_span_tokens must be at least 1");
    counter_for(partition_.counter);
    fs::create_directories(root_);
    load_manifest();
}

TokenCounter DocumentStore::counter_for(CountMode mode) const { return TokenCounter(mode, counter_gateway_); }

void DocumentStore::load_manifest() {
    const fs::path path = root_ / "manifest.json";
    if (!fs::exists(path)) return;
    const json j = json::parse(read_file(path));
    for (const auto& [id, je] : j.at("documents").items()) {
        Entry e;
        e.title = je.at("title").get<std::string>();
        e.source_uri = je.value("source_uri", std::string());
        e.text_file = je.at("text_file").get<std::string>();
        e.sentence_count = je.at("sentence_count").get<std::size_t>();
        for (const auto& [key, jp] : je.at("partitions").items()) {
            e.partitions[key] = {jp.at("file").get<std::string>(), jp.at("span_count").get<std::size_t>()};
        }
        manifest_[id] = std::move(e);
    }
}

void DocumentStore::save_manifest() const {
    json docs = json::object();
    for (const auto& [id, e] : manifest_) {
        json parts = json::object();
        for (const auto& [key, fp] : e.partitions) parts[key] = {{"file", fp.first}, {"span_count", fp.second}};
        docs[id] = {{"title", e.title},
                    {"source_uri", e.source_uri},
                    {"text_file", e.text_file},
                    {"sentence_count", e.sentence_count},
                    {"partitions", std::move(parts)}};
    }
    write_atomically(root_ / "manifest.json", json{{"version", 1}, {"documents", std::move(docs)}}.dump(2));
}

UploadResult DocumentStore::upload(const std::string& title, const std::string& text, const std::string& source_uri) {
    RawDocument raw = make_document(title, text, source_uri);
    const std::string key = partition_cache_key(partition_, rules_.id());

    std::unique_lock lock(mutex_);
    auto it = manifest_.find(raw.doc_id);
    if (it != manifest_.end()) {
        if (auto p = it->second.partitions.find(key); p != it->second.partitions.end()) {
            return {raw.doc_id, false, p->second.second};
        }
    }

    const NormalizedDocument doc = normalize_document(raw, rules_);
    const auto spans = partition(doc, partition_.max_span_tokens, counter_for(partition_.counter));

    const std::string text_file = "docs/" + raw.doc_id + ".txt";
    const std::string cache_file = "partitions/" + raw.doc_id + "/" + key + ".json";
    if (!fs::exists(root_ / text_file)) write_atomically(root_ / text_file, raw.raw_text);
    write_atomically(root_ / cache_file, spans_to_cache_json(spans).dump());

    const bool created = it == manifest_.end();
    Entry& e = manifest_[raw.doc_id];
    e.title = raw.title;
    if (created) e.source_uri = raw.source_uri;
    e.text_file = text_file;
    e.sentence_count = doc.sentences.size();
    e.partitions[key] = {cache_file, spans.size()};
    save_manifest();
    return {raw.doc_id, created, spans.size()};
}

const DocumentStore::Entry& DocumentStore::entry(const std::string& doc_id) const {
    auto it = manifest_.find(doc_id);
    if (it == manifest_.end()) throw NotFoundError("unknown document: " + doc_id);
    return it->second;
}

bool DocumentStore::contains(const std::string& doc_id) const {
    std::shared_lock lock(mutex_);
    return manifest_.count(doc_id) != 0;
}

DocumentSummary DocumentStore::summary(const std::string& doc_id) const {
    std::shared_lock lock(mutex_);
    const Entry& e = entry(doc_id);
    DocumentSummary s{doc_id, e.title, e.source_uri, e.sentence_count, 0};
    if (auto p = e.partitions.find(partition_cache_key(partition_, rules_.id())); p != e.partitions.end()) {
        s.span_count = p->second.second;
    }
    return s;
}

std::vector<DocumentSummary> DocumentStore::list() const {
    std::vector<std::string> ids;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [id, e] : manifest_) ids.push_back(id);
    }
    std::vector<DocumentSummary> out;
    for (const auto& id : ids) out.push_back(summary(id));
    return out;
}

RawDocument DocumentStore::raw(const std::string& doc_id) const {
    std::string title, source, file;
    {
        std::shared_lock lock(mutex_);
        const Entry& e = entry(doc_id);
        title = e.title;
        source = e.source_uri;
        file = e.text_file;
    }
    RawDocument doc;
    doc.doc_id = doc_id;
    doc.title = std::move(title);
    doc.source_uri = std::move(source);
    doc.raw_text = read_file(root_ / file);
    return doc;
}

NormalizedDocument DocumentStore::normalized(const std::string& doc_id) const {
    return normalize_document(raw(doc_id), rules_);
}

std::vector<ContextSpan> DocumentStore::read_cached(const std::string& file) const {
    return spans_from_cache_json(json::parse(read_file(root_ / file)));
}

std::vector<ContextSpan> DocumentStore::spans(const std::string& doc_id, const PartitionConfig& config) const {
    std::string cached;
    {
        std::shared_lock lock(mutex_);
        const Entry& e = entry(doc_id);
        if (auto p = e.partitions.find(partition_cache_key(config, rules_.id())); p != e.partitions.end()) {
            cached = p->second.first;
        }
    }
    if (!cached.empty()) return read_cached(cached);
    return partition(normalized(doc_id), config.max_span_tokens, counter_for(config.counter));
}

std::shared_ptr<const PreparedDocument> DocumentStore::prepared(const std::string& doc_id) const {
    {
        std::lock_guard lock(prepared_mutex_);
        if (auto it = prepared_.find(doc_id); it != prepared_.end()) return it->second;
    }
    const NormalizedDocument doc = normalized(doc_id);
    auto prep = std::make_shared<const PreparedDocument>(prepare_document(doc, spans(doc_id, partition_), partition_));
    std::lock_guard lock(prepared_mutex_);
    return prepared_.emplace(doc_id, std::move(prep)).first->second;
}

}  // namespace lexqa

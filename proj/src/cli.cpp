#include "lexqa/cli.hpp"

#include "lexqa/errors.hpp"
#include "lexqa/evaluation.hpp"
#include "lexqa/gateway.hpp"
#include "lexqa/pipeline.hpp"
#include "lexqa/report.hpp"
#include "lexqa/service.hpp"
#include "lexqa/store.hpp"

#include <CLI11.hpp>
#include <httplib.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

namespace lexqa {

namespace {

namespace fs = std::filesystem;

struct GlobalOptions {
    std::string store = ".lexqa";
    std::string gateway_url;
    std::string rules_file;
    std::size_t max_span_tokens = 512;
    std::string counter = "word";
};

struct Context {
    GlobalOptions global;
    std::ostream& out;
    std::ostream& err;

    AbbreviationRules rules() const {
        return global.rules_file.empty() ? AbbreviationRules::legal_defaults()
                                         : AbbreviationRules::from_file(global.rules_file);
    }

    PartitionConfig partition() const { return {global.max_span_tokens, parse_count_mode(global.counter)}; }

    std::shared_ptr<const ModelGateway> gateway() const {
        if (global.gateway_url.empty()) return nullptr;
        HttpGatewayOptions opts;
        opts.base_url = global.gateway_url;
        return std::make_shared<HttpGateway>(opts);
    }
};

std::pair<std::string, int> parse_listen(const std::string& listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--listen", "expected HOST:PORT");
    int port = 0;
    try {
        port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--listen", "invalid port in " + listen);
    }
    return {listen.substr(0, colon), port};
}

void write_output(const Context& ctx, const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        ctx.out << contents;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << contents;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
    std::string path;
    std::string title;
};

int cmd_ingest(const Context& ctx, const IngestArgs& args) {
    const auto gw = ctx.gateway();
    DocumentStore store(ctx.global.store, ctx.rules(), ctx.partition(), gw.get());
    RawDocument doc = load_document(args.path, args.title);
    const auto result = store.upload(doc.title, doc.raw_text, doc.source_uri);
    const auto summary = store.summary(result.doc_id);
    ctx.out << "doc_id: " << result.doc_id << "\n"
            << "title: " << summary.title << "\n"
            << "sentences: " << summary.sentence_count << "\n"
            << "spans: " << result.span_count << "\n"
            << "max_span_tokens: " << store.partition_config().max_span_tokens << "\n"
            << "counter: " << to_string(store.partition_config().counter) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct AskArgs {
    std::string target;
    std::string question;
    std::size_t top_n = kDefaultTopN;
    std::string scorer = "cross";
    std::string format = "json";
    std::string out;
    std::string title;
};

int cmd_ask(const Context& ctx, const AskArgs& args) {
    const ScorerKind scorer = parse_scorer_kind(args.scorer);
    const ReportFormat format = parse_report_format(args.format);
    const auto gw = ctx.gateway();
    const PartitionConfig cfg = ctx.partition();

    std::shared_ptr<const PreparedDocument> doc;
    if (fs::is_regular_file(args.target)) {
        const auto raw = load_document(args.target, args.title);
        const auto normalized = normalize_document(raw, ctx.rules());
        doc = std::make_shared<const PreparedDocument>(
            prepare_document(normalized, cfg, TokenCounter(cfg.counter, gw.get())));
    } else {
        if (!fs::exists(fs::path(ctx.global.store) / "manifest.json")) {
            throw NotFoundError("no such file, and no document store at " + ctx.global.store + ": " + args.target);
        }
        DocumentStore store(ctx.global.store, ctx.rules(), cfg, gw.get());
        doc = store.prepared(args.target);
    }

    QaPipeline pipeline(gw);
    AskOptions opts;
    opts.n = args.top_n;
    opts.scorer = scorer;
    const QueryReport report = pipeline.ask(*doc, args.question, opts);
    write_output(ctx, args.out, render(report, format));
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct EvalArgs {
    std::string gold;
    std::size_t top_n = kDefaultTopN;
    std::string scorer = "cross";
    std::string report;
    std::string results;
    std::string save_results;
    std::vector<std::string> docs;
};

int cmd_eval(const Context& ctx, const EvalArgs& args) {
    const GoldDataset gold = load_gold(args.gold);
    std::vector<QuestionResult> results;

    if (!args.results.empty()) {
        std::ifstream in(args.results);
        if (!in) throw NotFoundError("cannot open results file: " + args.results);
        results = parse_results(in);
    } else {
        const ScorerKind scorer = parse_scorer_kind(args.scorer);
        const auto gw = ctx.gateway();
        PartitionConfig cfg = ctx.partition();
        if (gold.partition) {
            cfg.max_span_tokens = gold.partition->max_span_tokens;
            cfg.counter = parse_count_mode(gold.partition->counter);
        }
        const AbbreviationRules rules = ctx.rules();
        if (gold.partition && !gold.partition->ruleset_id.empty() && gold.partition->ruleset_id != rules.id()) {
            ctx.err << "warning: gold file was annotated with ruleset " << gold.partition->ruleset_id
                    << " but " << rules.id() << " is loaded; span ids may not match\n";
        }
        DocumentStore store(ctx.global.store, rules, cfg, gw.get());
        for (const auto& path : args.docs) {
            const auto raw = load_document(path);
            store.upload(raw.title, raw.raw_text, raw.source_uri);
        }
        QaPipeline pipeline(gw);
        AskOptions opts;
        opts.n = args.top_n;
        opts.scorer = scorer;
        for (const auto& entry : gold.entries) {
            const auto doc = store.prepared(entry.doc_id);
            const auto t0 = std::chrono::steady_clock::now();
            const QueryReport report = pipeline.ask(*doc, entry.question, opts);
            const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            results.push_back(result_from_report(report, seconds));
        }
    }

    if (!args.save_results.empty()) {
        std::ofstream f(args.save_results, std::ios::trunc);
        for (const auto& r : results) f << result_to_json(r).dump() << "\n";
    }

    const EvalReport report = evaluate(results, gold.entries, args.top_n);
    ctx.out << eval_report_markdown(report);
    if (!args.report.empty()) write_output(ctx, args.report, eval_report_to_json(report).dump(2) + "\n");
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ServeArgs {
    std::string listen = "127.0.0.1:8080";
    std::size_t default_n = kDefaultTopN;
};

int cmd_serve(const Context& ctx, const ServeArgs& args) {
    const auto [host, port] = parse_listen(args.listen);
    const auto gw = ctx.gateway();
    DocumentStore store(ctx.global.store, ctx.rules(), ctx.partition(), gw.get());
    QaPipeline pipeline(gw);
    ServiceConfig cfg;
    cfg.default_n = args.default_n;
    cfg.default_scorer = gw ? ScorerKind::cross : ScorerKind::tfidf;
    cfg.gateway_url = ctx.global.gateway_url;
    Service service(store, pipeline, cfg);

    httplib::Server server;
    service.mount(server);
    ctx.err << "lexqa service listening on " << host << ":" << port << " (store " << ctx.global.store << ")\n";
    if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + args.listen);
    return kExitOk;
}

int cmd_stub_gateway(const Context& ctx, const std::string& listen) {
    const auto [host, port] = parse_listen(listen);
    StubGateway backend;
    httplib::Server server;
    mount_gateway_routes(server, backend);
    ctx.err << "stub gateway listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) throw std::runtime_error("cannot listen on " + listen);
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"lexqa: question answering over legal and regulatory documents"};
    app.require_subcommand(1);
    app.fallthrough();

    Context ctx{GlobalOptions{}, out, err};
    auto& g = ctx.global;
    app.add_option("--store", g.store, "Document store directory")->envname("LEXQA_STORE");
    app.add_option("--gateway-url", g.gateway_url, "Model gateway base URL")->envname("LEXQA_GATEWAY_URL");
    app.add_option("--rules", g.rules_file, "Abbreviation rules file (default: built-in legal rules)");
    app.add_option("--max-span-tokens", g.max_span_tokens, "Maximum tokens per context span")
        ->check(CLI::PositiveNumber);
    app.add_option("--counter", g.counter, "Token counting: word or backend")
        ->check(CLI::IsMember({"word", "backend"}));

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Load, normalize and partition a document into the store");
    ingest_cmd->add_option("path", ingest.path, "Plain-text document")->required();
    ingest_cmd->add_option("--title", ingest.title, "Display title (default: file name)");

    AskArgs ask;
    auto* ask_cmd = app.add_subcommand("ask", "Answer a question over a stored document or a text file");
    ask_cmd->add_option("target", ask.target, "Stored doc_id or path to a text file")->required();
    ask_cmd->add_option("question", ask.question, "Natural-language question")->required();
    ask_cmd->add_option("-n,--top-n", ask.top_n, "Number of context spans to return")->check(CLI::PositiveNumber);
    ask_cmd->add_option("--scorer", ask.scorer, "cross, tfidf or stub")->check(CLI::IsMember({"cross", "tfidf", "stub"}));
    ask_cmd->add_option("--format", ask.format, "json, md or html")->check(CLI::IsMember({"json", "md", "markdown", "html"}));
    ask_cmd->add_option("-o,--out", ask.out, "Output file (default: stdout)");
    ask_cmd->add_option("--title", ask.title, "Title for a one-shot file");

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate retrieval and answer accuracy against a gold file");
    eval_cmd->add_option("gold", ev.gold, "Gold JSON Lines file")->required();
    eval_cmd->add_option("-n,--top-n", ev.top_n, "N for accuracy@N")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--scorer", ev.scorer, "cross, tfidf or stub")->check(CLI::IsMember({"cross", "tfidf", "stub"}));
    eval_cmd->add_option("--report", ev.report, "Write the JSON evaluation report here");
    eval_cmd->add_option("--results", ev.results, "Score precomputed results (JSON Lines) instead of running");
    eval_cmd->add_option("--save-results", ev.save_results, "Write per-question results (JSON Lines) here");
    eval_cmd->add_option("--doc", ev.docs, "Ingest this text file before evaluating (repeatable)");

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
    serve_cmd->add_option("--listen", serve.listen, "HOST:PORT");
    serve_cmd->add_option("--default-n", serve.default_n, "Default top-N for queries")->check(CLI::PositiveNumber);

    std::string stub_listen = "127.0.0.1:8081";
    auto* stub_cmd = app.add_subcommand("stub-gateway", "Serve the gateway protocol with the deterministic stub backends");
    stub_cmd->add_option("--listen", stub_listen, "HOST:PORT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest_cmd) return cmd_ingest(ctx, ingest);
        if (*ask_cmd) return cmd_ask(ctx, ask);
        if (*eval_cmd) return cmd_eval(ctx, ev);
        if (*serve_cmd) return cmd_serve(ctx, serve);
        if (*stub_cmd) return cmd_stub_gateway(ctx, stub_listen);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotFoundError& e) {
        err << "error: " << e.what() << "\n";
        return kExitNotFound;
    } catch (const GatewayError& e) {
        err << "error: " << e.what() << "\n";
        return kExitGateway;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace lexqa

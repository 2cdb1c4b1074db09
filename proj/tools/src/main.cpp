// mole: schema-driven metadata extraction for dataset papers.
//
// Subcommands:
//   extract       run an extraction strategy over papers and write records
//   evaluate      score prediction records against gold annotations
//   fewshot       generate synthetic example papers with gold annotations
//   schema-check  lint schema files
//   report        render saved score/cost reports as Markdown tables

#include "mole/browse.hpp"
#include "mole/errors.hpp"
#include "mole/extract.hpp"
#include "mole/gateway.hpp"
#include "mole/rng.hpp"
#include "mole/schema.hpp"
#include "mole/score.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace mole;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
}

void write_json(const fs::path& path, const ordered_json& j) { write_file(path, j.dump(2) + "\n"); }

fs::path default_data_dir() {
    if (const char* env = std::getenv("MOLE_DATA_DIR")) return fs::path(env);
    return fs::path("data");
}

/// Accepts either a category name (resolved against the schema directory)
/// or a path to a schema file. The file's stem picks the category when it
/// names one.
Schema resolve_schema(const std::string& arg, const fs::path& schema_dir) {
    fs::path path = arg;
    if (parse_category(arg)) path = schema_dir / (arg + ".json");
    if (!fs::exists(path)) throw Error("schema not found: " + path.string());
    auto category = parse_category(path.stem().string());
    return parse_schema(read_file(path), category.value_or(Category::ar));
}

/// "low", "mid" and "high" select the builtin profiles; anything else is
/// read as a profile file.
LengthProfile resolve_profile(const std::string& arg) {
    if (auto level = parse_profile_level(arg)) return builtin_profile(*level);
    return parse_length_profile(read_file(arg));
}

void replace_all(std::string& text, std::string_view needle, std::string_view replacement) {
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + replacement.size()))
        text.replace(pos, needle.size(), replacement);
}

// ---------------------------------------------------------------------------
// extract

struct ExtractOptions {
    std::string strategy = "llm";
    std::string schema;
    std::string schema_dir;
    std::vector<std::string> papers;
    std::string format = "text";
    std::string pdf_extract_cmd;
    std::string profile;
    std::string model;
    std::string config_path;
    std::size_t shots = 0;
    double fraction = 1.0;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    bool browse = false;
    std::string fetch_cache;
    std::string mock_responses;
    std::string mock_fetch;
    bool record_requests = false;
    std::string prices;
    std::string out;
};

Document load_paper(const fs::path& path, SourceFormat format, const ExtractOptions& o) {
    if (path.extension() != ".pdf") return load_document(path, format);
    if (o.pdf_extract_cmd.empty())
        throw Error("PDF input needs --pdf-extract-cmd: " + path.string());
    fs::path text_path = fs::path(o.out) / "pdf-text" / (path.stem().string() + ".txt");
    fs::create_directories(text_path.parent_path());
    std::string command = o.pdf_extract_cmd;
    replace_all(command, "{in}", path.string());
    replace_all(command, "{out}", text_path.string());
    if (int rc = std::system(command.c_str()); rc != 0)
        throw Error("pdf extraction command failed (status " + std::to_string(rc) +
                    "): " + command);
    return load_document(text_path, SourceFormat::plain_text);
}

std::vector<MockBackend::Step> mock_steps_for(const ordered_json& replies, const std::string& id) {
    auto it = replies.find(id);
    if (it == replies.end()) throw Error("no scripted reply for paper " + id);
    std::vector<MockBackend::Step> steps;
    auto push = [&steps, &id](const ordered_json& j) {
        MockBackend::Step step;
        if (j.is_string()) {
            step.content = j.get<std::string>();
        } else if (j.is_object()) {
            step.content = j.value("content", std::string());
            step.transport_error = j.value("transport_error", false);
            step.input_tokens = j.value("input_tokens", 0);
            step.output_tokens = j.value("output_tokens", 0);
        } else {
            throw Error("mock reply for " + id + " must be a string or an object");
        }
        steps.push_back(std::move(step));
    };
    if (it->is_array())
        for (const auto& step : *it) push(step);
    else
        push(*it);
    if (steps.empty()) throw Error("empty mock script for paper " + id);
    return steps;
}

Fetcher make_mock_fetcher(const fs::path& path) {
    auto bodies = std::make_shared<std::map<std::string, std::string>>();
    auto j = ordered_json::parse(read_file(path));
    if (!j.is_object()) throw Error("mock fetch file must be a JSON object of url -> body");
    for (const auto& [url, body] : j.items()) (*bodies)[url] = body.get<std::string>();
    return [bodies](const std::string& url) -> std::optional<std::string> {
        auto it = bodies->find(url);
        if (it == bodies->end()) return std::nullopt;
        return it->second;
    };
}

PriceTable load_prices(const std::string& arg) {
    if (!arg.empty()) return PriceTable::parse(read_file(arg));
    fs::path fallback = default_data_dir() / "prices.json";
    if (fs::exists(fallback)) return PriceTable::parse(read_file(fallback));
    return {};
}

int run_extract(const ExtractOptions& o) {
    auto strategy = parse_strategy(o.strategy);
    if (!strategy) throw Error("unknown strategy: " + o.strategy);
    auto format = parse_source_format(o.format);
    if (!format) throw Error("unknown paper format: " + o.format);
    if (o.browse && *strategy != Strategy::llm) throw Error("--browse needs the llm strategy");

    fs::path schema_dir = o.schema_dir.empty() ? default_data_dir() / "schemas"
                                               : fs::path(o.schema_dir);
    Schema schema = resolve_schema(o.schema, schema_dir);
    if (!o.profile.empty()) schema = apply_length_profile(schema, resolve_profile(o.profile));

    std::vector<Document> docs;
    for (const auto& path : o.papers) docs.push_back(load_paper(path, *format, o));
    std::sort(docs.begin(), docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < docs.size(); ++i)
        if (docs[i].id == docs[i - 1].id) throw Error("duplicate paper id: " + docs[i].id);

    const bool needs_model = *strategy == Strategy::llm;
    ModelConfig cfg;
    if (needs_model) {
        if (!o.config_path.empty()) cfg = parse_model_config(read_file(o.config_path));
        if (!o.model.empty()) cfg.model_id = o.model;
        if (cfg.model_id.empty()) throw Error("the llm strategy needs --model or --config");
    }

    ordered_json mock_replies;
    const bool mocked = !o.mock_responses.empty();
    if (mocked) {
        mock_replies = ordered_json::parse(read_file(o.mock_responses));
        if (!mock_replies.is_object())
            throw Error("mock responses file must be a JSON object of paper id -> reply");
    }
    std::shared_ptr<ChatBackend> http_backend;
    if (needs_model && !mocked) http_backend = make_http_backend();

    Fetcher fetcher;
    if (o.browse) {
        if (!o.mock_fetch.empty()) {
            fetcher = make_mock_fetcher(o.mock_fetch);
        } else {
            std::optional<fs::path> cache;
            if (!o.fetch_cache.empty()) cache = fs::path(o.fetch_cache);
            fetcher = make_http_fetcher(cache);
        }
    }

    std::vector<SyntheticExample> shots;
    if (needs_model && o.shots > 0) shots = generate_synthetic_examples(schema, o.shots, o.seed);

    auto ledger = std::make_shared<CostLedger>();

    struct PaperResult {
        bool ok = false;
        ordered_json output;
        std::string error;
        int attempts = 0;
    };
    std::vector<PaperResult> results(docs.size());

    auto process = [&](std::size_t i) {
        const Document& d = docs[i];
        PaperResult r;
        try {
            std::vector<ordered_json> captured;
            ExtractionRun run;
            ordered_json browse_json;
            if (*strategy == Strategy::random) {
                run = extract_random(schema, SeededRng::mix(o.seed, i));
                run.document_id = d.id;
            } else if (*strategy == Strategy::keyword) {
                run = extract_keyword(d, schema);
            } else {
                std::shared_ptr<ChatBackend> backend = http_backend;
                GatewayOptions options;
                if (mocked) {
                    backend = std::make_shared<MockBackend>(mock_steps_for(mock_replies, d.id));
                    options.sleeper = [](std::chrono::milliseconds) {};
                }
                if (o.record_requests)
                    options.observer = [&captured](const ordered_json& body) {
                        captured.push_back(body);
                    };
                Gateway gateway(backend, ledger, options);
                run = extract_llm(d, schema, gateway, cfg, shots, o.fraction);
                if (o.browse) {
                    auto outcome =
                        extract_with_browsing(d, schema, run.record, gateway, cfg, fetcher);
                    run = std::move(outcome.run);
                    browse_json["browsed"] = outcome.browsed;
                    browse_json["fetched_urls"] = outcome.fetched_urls;
                    if (!outcome.warning.empty()) browse_json["warning"] = outcome.warning;
                }
            }
            r.output = run_to_json(run);
            if (!browse_json.is_null()) r.output["browse"] = std::move(browse_json);
            if (o.record_requests) r.output["requests"] = captured;
            r.attempts = run.attempts_used;
            r.ok = true;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        results[i] = std::move(r);
    };

    const std::size_t jobs = std::min<std::size_t>(std::max(1u, o.jobs), docs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < docs.size(); ++i) process(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < docs.size(); i = next++) process(i);
            });
        for (auto& worker : pool) worker.join();
    }

    fs::create_directories(o.out);
    ordered_json manifest;
    manifest["strategy"] = to_string(*strategy);
    manifest["schema"] = to_string(schema.category);
    if (needs_model) manifest["model"] = cfg.model_id;
    manifest["shots"] = needs_model ? shots.size() : 0;
    manifest["fraction"] = o.fraction;
    manifest["seed"] = o.seed;

    bool any_failed = false;
    ordered_json papers = ordered_json::array();
    for (std::size_t i = 0; i < docs.size(); ++i) {
        ordered_json entry;
        entry["id"] = docs[i].id;
        if (results[i].ok) {
            std::string file = docs[i].id + ".json";
            write_json(fs::path(o.out) / file, results[i].output);
            entry["status"] = "ok";
            entry["file"] = file;
            entry["attempts"] = results[i].attempts;
        } else {
            any_failed = true;
            entry["status"] = "error";
            entry["error"] = results[i].error;
            std::cerr << "mole: " << docs[i].id << ": " << results[i].error << "\n";
        }
        papers.push_back(std::move(entry));
    }
    manifest["papers"] = std::move(papers);
    if (needs_model)
        manifest["costs"] = cost_report_json(estimate_cost(*ledger, load_prices(o.prices)));
    write_json(fs::path(o.out) / "manifest.json", manifest);

    std::cout << "extracted " << (docs.size() - static_cast<std::size_t>(std::count_if(
                                      results.begin(), results.end(),
                                      [](const PaperResult& r) { return !r.ok; })))
              << "/" << docs.size() << " papers into " << o.out << "\n";
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
    std::string golds;
    std::string predictions;
    std::string schema_dir;
    std::string profile;
    std::string out;
    std::string name = "model";
    std::optional<int> year_after;
};

int run_evaluate(const EvaluateOptions& o) {
    fs::path schema_dir = o.schema_dir.empty() ? default_data_dir() / "schemas"
                                               : fs::path(o.schema_dir);
    std::optional<LengthProfile> profile;
    if (!o.profile.empty()) profile = resolve_profile(o.profile);

    std::map<Category, Schema> schemas;
    auto schema_for = [&](Category category) -> const Schema& {
        auto it = schemas.find(category);
        if (it != schemas.end()) return it->second;
        Schema schema = resolve_schema(to_string(category), schema_dir);
        if (profile) schema = apply_length_profile(schema, *profile);
        return schemas.emplace(category, std::move(schema)).first->second;
    };

    std::vector<fs::path> gold_paths;
    if (!fs::is_directory(o.golds)) throw Error("gold directory not found: " + o.golds);
    for (const auto& entry : fs::directory_iterator(o.golds))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            gold_paths.push_back(entry.path());
    std::sort(gold_paths.begin(), gold_paths.end());
    if (gold_paths.empty()) throw Error("no gold annotations in " + o.golds);

    std::vector<PaperScore> scores;
    double adherence_sum = 0.0;
    std::vector<std::string> problems;
    for (const auto& path : gold_paths) {
        std::string raw = read_file(path);
        ordered_json j = ordered_json::parse(raw, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("category") ||
            !j["category"].is_string()) {
            problems.push_back(path.string() + ": not a gold annotation");
            continue;
        }
        auto category = parse_category(j["category"].get<std::string>());
        if (!category) {
            problems.push_back(path.string() + ": unknown category");
            continue;
        }
        const Schema& schema = schema_for(*category);
        GoldRecord gold = parse_gold(raw, schema);

        fs::path pred_path = fs::path(o.predictions) / (gold.paper_id + ".json");
        if (!fs::exists(pred_path)) {
            problems.push_back("missing prediction for " + gold.paper_id);
            continue;
        }
        ordered_json pj = ordered_json::parse(read_file(pred_path), nullptr, false);
        if (pj.is_discarded() || !pj.is_object() || !pj.contains("record")) {
            problems.push_back(pred_path.string() + ": no record object");
            continue;
        }
        MetadataRecord record = validate_record(pj["record"], schema).first;
        scores.push_back(score_paper(record, gold, schema));
        adherence_sum += length_adherence(record, schema);
    }
    if (!problems.empty()) {
        for (const auto& problem : problems) std::cerr << "mole: " << problem << "\n";
        return 2;
    }

    AggregateFilters filters;
    filters.published_after = o.year_after;
    ScoreReport report = aggregate_report(scores, schemas, filters);
    double adherence = adherence_sum / static_cast<double>(scores.size());

    std::cout << "Papers scored: " << report.papers << "\n\n";
    std::cout << render_category_table({{o.name, report}}) << "\n";
    std::cout << render_group_table({{o.name, report}}) << "\n";
    std::cout << "Length adherence: " << adherence << "\n";

    if (!o.out.empty()) {
        ordered_json out_json = report_to_json(report);
        out_json["length_adherence"] = adherence;
        write_json(o.out, out_json);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// fewshot

struct FewshotOptions {
    std::string schema;
    std::string schema_dir;
    std::string out;
    std::size_t count = 4;
    std::uint64_t seed = 0;
};

int run_fewshot(const FewshotOptions& o) {
    fs::path schema_dir = o.schema_dir.empty() ? default_data_dir() / "schemas"
                                               : fs::path(o.schema_dir);
    Schema schema = resolve_schema(o.schema, schema_dir);
    auto examples = generate_synthetic_examples(schema, o.count, o.seed);

    fs::create_directories(o.out);
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const auto& example = examples[i];
        std::string stem = "synth-" + to_string(schema.category) + "-" + std::to_string(i);
        write_file(fs::path(o.out) / (stem + ".txt"), example.paper_text);

        ordered_json gold;
        gold["category"] = to_string(schema.category);
        gold["paper_id"] = stem;
        if (const AnswerValue* year = example.gold.find("Year");
            year != nullptr && year->tag() == AnswerTag::Year)
            gold["publication_year"] = year->as_year();
        gold["metadata"] = record_to_json(example.gold);
        // Mark the scored attributes whose value the template states.
        ordered_json exists = ordered_json::object();
        for (const auto& spec : schema.attributes) {
            if (!spec.validation_group) continue;
            const AnswerValue* value = example.gold.find(spec.name);
            if (value != nullptr && !(*value == default_answer(spec))) exists[spec.name] = 1;
        }
        gold["exists"] = std::move(exists);
        write_json(fs::path(o.out) / (stem + ".json"), gold);
    }
    std::cout << "wrote " << examples.size() << " examples to " << o.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// schema-check

int run_schema_check(const std::vector<std::string>& files) {
    bool clean = true;
    for (const auto& file : files) {
        try {
            auto category = parse_category(fs::path(file).stem().string());
            Schema schema = parse_schema(read_file(file), category.value_or(Category::ar));
            auto violations = validate_schema(schema);
            if (violations.empty()) {
                std::cout << file << ": OK (" << schema.attributes.size() << " attributes)\n";
            } else {
                clean = false;
                for (const auto& v : violations)
                    std::cout << file << ": " << v.attribute << ": " << v.rule << ": " << v.detail
                              << "\n";
            }
        } catch (const Error& e) {
            clean = false;
            std::cout << file << ": error: " << e.what() << "\n";
        }
    }
    return clean ? 0 : 1;
}

// ---------------------------------------------------------------------------
// report

ScoreReport report_from_json(const ordered_json& j) {
    if (!j.is_object()) throw Error("score report must be a JSON object");
    ScoreReport report;
    report.papers = j.value("papers", std::size_t{0});
    report.precision = j.value("precision", 0.0);
    report.recall = j.value("recall", 0.0);
    report.weighted_f1 = j.value("weighted_f1", 0.0);
    if (j.contains("categories"))
        for (const auto& row : j["categories"]) {
            ScoreReport::CategoryRow c;
            c.category =
                parse_category(row.value("category", std::string())).value_or(Category::ar);
            c.papers = row.value("papers", std::size_t{0});
            c.precision = row.value("precision", 0.0);
            c.recall = row.value("recall", 0.0);
            c.f1 = row.value("f1", 0.0);
            report.categories.push_back(c);
        }
    if (j.contains("groups"))
        for (const auto& [group, mean] : j["groups"].items())
            report.group_scores.emplace_back(group, mean.get<double>());
    if (j.contains("attributes"))
        for (const auto& [attr, mean] : j["attributes"].items())
            report.attribute_scores.emplace_back(attr, mean.get<double>());
    return report;
}

struct ReportOptions {
    std::vector<std::string> scores;
    std::string costs;
};

int run_report(const ReportOptions& o) {
    if (o.scores.empty() && o.costs.empty())
        throw Error("nothing to render; pass score report files or --costs");

    if (!o.scores.empty()) {
        std::vector<std::pair<std::string, ScoreReport>> rows;
        for (const auto& file : o.scores)
            rows.emplace_back(fs::path(file).stem().string(),
                              report_from_json(ordered_json::parse(read_file(file))));
        std::cout << render_category_table(rows) << "\n";
        std::cout << render_group_table(rows);
    }

    if (!o.costs.empty()) {
        ordered_json j = ordered_json::parse(read_file(o.costs));
        if (!j.is_array()) throw Error("cost report must be a JSON array");
        if (!o.scores.empty()) std::cout << "\n";
        std::cout << "| Model | Input tokens | Output tokens | Attempts | USD |\n";
        std::cout << "| --- | --- | --- | --- | --- |\n";
        for (const auto& row : j) {
            std::ostringstream usd;
            if (row.contains("usd") && row["usd"].is_number())
                usd << std::fixed << std::setprecision(4) << row["usd"].get<double>();
            else
                usd << "-";
            std::cout << "| " << row.value("model", std::string("?")) << " | "
                      << row.value("input_tokens", 0) << " | " << row.value("output_tokens", 0)
                      << " | " << row.value("attempts", 0) << " | " << usd.str() << " |\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"schema-driven metadata extraction for dataset papers"};
    app.require_subcommand(1);

    ExtractOptions extract_opts;
    auto* extract = app.add_subcommand("extract", "extract metadata records from papers");
    extract->add_option("--strategy", extract_opts.strategy, "llm, random or keyword")
        ->capture_default_str();
    extract->add_option("--schema", extract_opts.schema, "schema category or file")->required();
    extract->add_option("--schema-dir", extract_opts.schema_dir, "directory with schema files");
    extract->add_option("--paper", extract_opts.papers, "paper file (or latex directory)")
        ->required();
    extract->add_option("--format", extract_opts.format, "paper format: latex or text")
        ->capture_default_str();
    extract->add_option("--pdf-extract-cmd", extract_opts.pdf_extract_cmd,
                        "command turning {in} (pdf) into {out} (text)");
    extract->add_option("--profile", extract_opts.profile, "length profile: low, mid, high or file");
    extract->add_option("--model", extract_opts.model, "model id for the llm strategy");
    extract->add_option("--config", extract_opts.config_path, "model config JSON file");
    extract->add_option("--shots", extract_opts.shots, "few-shot example count")
        ->capture_default_str();
    extract->add_option("--fraction", extract_opts.fraction, "leading fraction of the paper")
        ->capture_default_str();
    extract->add_option("--seed", extract_opts.seed, "seed for shots and the random strategy")
        ->capture_default_str();
    extract->add_option("--jobs", extract_opts.jobs, "parallel papers")->capture_default_str();
    extract->add_flag("--browse", extract_opts.browse, "follow repository links for a second pass");
    extract->add_option("--fetch-cache", extract_opts.fetch_cache, "cache directory for fetches");
    extract->add_option("--mock-responses", extract_opts.mock_responses,
                        "JSON file of paper id -> scripted model replies");
    extract->add_option("--mock-fetch", extract_opts.mock_fetch,
                        "JSON file of url -> body for --browse");
    extract->add_flag("--record-requests", extract_opts.record_requests,
                      "store request bodies in each output file");
    extract->add_option("--prices", extract_opts.prices, "price table JSON file");
    extract->add_option("--out", extract_opts.out, "output directory")->required();

    EvaluateOptions evaluate_opts;
    auto* evaluate = app.add_subcommand("evaluate", "score predictions against gold annotations");
    evaluate->add_option("--golds", evaluate_opts.golds, "directory with gold annotation files")
        ->required();
    evaluate
        ->add_option("--predictions", evaluate_opts.predictions,
                     "directory with extraction outputs")
        ->required();
    evaluate->add_option("--schema-dir", evaluate_opts.schema_dir, "directory with schema files");
    evaluate->add_option("--profile", evaluate_opts.profile,
                         "length profile for adherence: low, mid, high or file");
    evaluate->add_option("--year-after", evaluate_opts.year_after,
                         "keep only papers published strictly after this year");
    evaluate->add_option("--name", evaluate_opts.name, "row label in rendered tables")
        ->capture_default_str();
    evaluate->add_option("--out", evaluate_opts.out, "write the report JSON here");

    FewshotOptions fewshot_opts;
    auto* fewshot = app.add_subcommand("fewshot", "generate synthetic example papers");
    fewshot->add_option("--schema", fewshot_opts.schema, "schema category or file")->required();
    fewshot->add_option("--schema-dir", fewshot_opts.schema_dir, "directory with schema files");
    fewshot->add_option("--n,--count", fewshot_opts.count, "number of examples")
        ->capture_default_str();
    fewshot->add_option("--seed", fewshot_opts.seed, "sampling seed")->capture_default_str();
    fewshot->add_option("--out", fewshot_opts.out, "output directory")->required();

    std::vector<std::string> check_files;
    auto* schema_check = app.add_subcommand("schema-check", "lint schema files");
    schema_check->add_option("files", check_files, "schema files to check")->required();

    ReportOptions report_opts;
    auto* report = app.add_subcommand("report", "render saved reports as Markdown");
    report->add_option("scores", report_opts.scores, "score report JSON files (row per file)");
    report->add_option("--costs", report_opts.costs, "cost report JSON file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return run_extract(extract_opts);
        if (evaluate->parsed()) return run_evaluate(evaluate_opts);
        if (fewshot->parsed()) return run_fewshot(fewshot_opts);
        if (schema_check->parsed()) return run_schema_check(check_files);
        if (report->parsed()) return run_report(report_opts);
    } catch (const std::exception& e) {
        std::cerr << "mole: error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

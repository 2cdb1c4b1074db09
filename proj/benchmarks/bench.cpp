// Micro benchmarks for the paths that run per attribute or per reply:
// option similarity matching, reply repair, record validation, flexible
// value matching and context truncation. Self-contained, no fixture files.

#include "mole/document.hpp"
#include "mole/json_repair.hpp"
#include "mole/prompt.hpp"
#include "mole/schema.hpp"
#include "mole/score.hpp"
#include "mole/text.hpp"
#include "mole/validation.hpp"

#include <benchmark/benchmark.h>
#include <nlohmann/json.hpp>

#include <string>

namespace {

using namespace mole;
using nlohmann::ordered_json;

const Schema& bench_schema() {
    static const Schema schema = parse_schema(R"({
    "Name": {
        "question": "What is the name of the dataset?",
        "answer_type": "str",
        "answer_min": 1,
        "answer_max": 5
    },
    "Subsets": {
        "question": "What are the subsets of this dataset?",
        "answer_type": "List[Dict[Name, Volume, Unit]]",
        "validation_group": "DIVERSITY",
        "answer_min": 0,
        "answer_max": 10
    },
    "Link": {
        "question": "What is the link to access the dataset?",
        "answer_type": "url",
        "validation_group": "ACCESSIBILITY",
        "answer_min": 1,
        "answer_max": 1
    },
    "License": {
        "question": "What is the license of the dataset?",
        "options": ["Apache-1.0", "Apache-2.0", "Non Commercial Use - ELRA END USER",
                    "BSD", "CC BY 1.0", "CC BY 2.0", "CC BY 3.0", "CC BY 4.0",
                    "CC BY-NC 1.0", "CC BY-NC 2.0", "CC BY-NC 3.0", "CC BY-NC 4.0",
                    "CC BY-NC-ND 1.0", "CC BY-NC-ND 2.0", "CC BY-NC-ND 3.0",
                    "CC BY-NC-ND 4.0", "CC BY-SA 1.0", "CC BY-SA 2.0", "CC BY-SA 3.0",
                    "CC BY-SA 4.0", "CC BY-NC-SA 1.0", "CC BY-NC-SA 2.0",
                    "CC BY-NC-SA 3.0", "CC BY-NC-SA 4.0", "CC BY-ND 1.0", "CC BY-ND 2.0",
                    "CC BY-ND 3.0", "CC BY-ND 4.0", "CC0", "CDLA-Permissive-1.0",
                    "CDLA-Permissive-2.0", "GPL-1.0", "GPL-2.0", "GPL-3.0", "LDC User Agreement",
                    "LGPL-2.0", "LGPL-3.0", "MIT License", "ODbL-1.0", "MPL-1.0", "MPL-2.0",
                    "ODC-By", "AFL-3.0", "unknown"],
        "answer_type": "str",
        "validation_group": "ACCESSIBILITY",
        "answer_min": 1,
        "answer_max": 1
    },
    "Domain": {
        "question": "What is the domain of the dataset?",
        "options": ["social media", "news articles", "reviews", "commentary", "books",
                    "wikipedia", "web pages", "public datasets", "TV Channels",
                    "captions", "LLM", "other"],
        "answer_type": "List[str]",
        "validation_group": "CONTENT",
        "answer_min": 1,
        "answer_max": 12
    },
    "Volume": {
        "question": "What is the size of the dataset?",
        "answer_type": "float",
        "validation_group": "CONTENT",
        "answer_min": 1,
        "answer_max": 1
    },
    "Unit": {
        "question": "What kind of examples does the dataset include?",
        "options": ["tokens", "sentences", "documents", "images", "videos", "hours"],
        "answer_type": "str",
        "validation_group": "CONTENT",
        "answer_min": 1,
        "answer_max": 1
    },
    "Year": {
        "question": "What year was the dataset published?",
        "answer_type": "date[year]",
        "answer_min": 1,
        "answer_max": 1
    },
    "Test Split": {
        "question": "Does the dataset contain a test split?",
        "options": [true, false],
        "answer_type": "bool",
        "validation_group": "EVALUATION",
        "answer_min": 1,
        "answer_max": 1
    },
    "Description": {
        "question": "Write a brief description of the dataset.",
        "answer_type": "str",
        "answer_min": 0,
        "answer_max": 50
    }
})");
    return schema;
}

void BM_NormalizedEditDistance(benchmark::State& state) {
    const std::string a = "creative commons attribution non commercial 4.0";
    const std::string b = "CC BY-NC-SA 4.0 International";
    for (auto _ : state) benchmark::DoNotOptimize(normalized_edit_distance(a, b));
}
BENCHMARK(BM_NormalizedEditDistance);

// Worst case for option snapping: a mangled value against the full license
// option list.
void BM_MatchOption(benchmark::State& state) {
    const auto& spec = *bench_schema().find("License");
    for (auto _ : state) benchmark::DoNotOptimize(match_option("cc by nc sa 4", spec));
}
BENCHMARK(BM_MatchOption);

void BM_RepairJson(benchmark::State& state) {
    const std::string raw =
        "Sure, here is the extracted metadata you asked for:\n"
        "```json\n"
        "{\n"
        "  \"Name\": \"SynthCorpus\",\n"
        "  \"Domain\": [\"news articles\", \"web pages\",],\n"
        "  \"Volume\": \"40,000\",\n"
        "  \"Unit\": \"documents\",\n"
        "  \"Subsets\": [{\"Name\": \"train\", \"Volume\": 38000, \"Unit\": \"documents\"},],\n"
        "}\n"
        "```\n"
        "Let me know if anything needs fixing.";
    for (auto _ : state) benchmark::DoNotOptimize(repair_json(raw));
}
BENCHMARK(BM_RepairJson);

// A raw reply needing the full treatment: casts, option snapping, a dropped
// foreign key and defaults for missing attributes.
void BM_ValidateRecord(benchmark::State& state) {
    const ordered_json raw = ordered_json::parse(R"({
        "Name": "SynthCorpus",
        "License": "cc by-nc-sa 4.0",
        "Domain": "news",
        "Volume": "40,000",
        "Unit": "document",
        "Year": "2021",
        "Test Split": "true",
        "Subsets": [{"Name": "train", "Volume": "38,000", "Unit": "documents"}],
        "Citations": 12
    })");
    const Schema& schema = bench_schema();
    for (auto _ : state) benchmark::DoNotOptimize(validate_record(raw, schema));
}
BENCHMARK(BM_ValidateRecord);

void BM_MatchValuesList(benchmark::State& state) {
    const auto& spec = *bench_schema().find("Domain");
    const auto pred = AnswerValue::text_list(
        {"News Articles", "web pages", "books", "reviews", "captions"});
    const auto gold = AnswerValue::text_list(
        {"news articles", "web pages", "books", "commentary", "captions"});
    for (auto _ : state) benchmark::DoNotOptimize(match_values(pred, gold, spec));
}
BENCHMARK(BM_MatchValuesList);

void BM_TruncateContext(benchmark::State& state) {
    std::string text;
    text.reserve(120 * 1024);
    while (text.size() < 100 * 1024) text += "The corpus was collected from public sources. ";
    const Document d = make_document("bench", SourceFormat::plain_text, text);
    for (auto _ : state) benchmark::DoNotOptimize(truncate_context(d, 0.25));
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(d.text.size()));
}
BENCHMARK(BM_TruncateContext);

void BM_BuildExtractionRequest(benchmark::State& state) {
    const Schema& schema = bench_schema();
    std::string text;
    while (text.size() < 20 * 1024) text += "Section text about the dataset and its splits. ";
    const Document d = make_document("bench", SourceFormat::plain_text, text);
    for (auto _ : state) benchmark::DoNotOptimize(build_extraction_request(schema, d, {}));
}
BENCHMARK(BM_BuildExtractionRequest);

} // namespace

BENCHMARK_MAIN();

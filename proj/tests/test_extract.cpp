#include "mole/extract.hpp"
#include "mole/json_repair.hpp"

#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>
#include <vector>

using namespace mole;
using nlohmann::ordered_json;

namespace {

ModelConfig mock_config() {
    ModelConfig cfg;
    cfg.model_id = "mock/model";
    return cfg;
}

Gateway mock_gateway(std::shared_ptr<MockBackend> backend,
                     std::shared_ptr<CostLedger> ledger = nullptr) {
    GatewayOptions options;
    options.sleeper = [](std::chrono::milliseconds) {};
    return Gateway(std::move(backend), std::move(ledger), options);
}

} // namespace

TEST_CASE("strategy names round-trip") {
    CHECK(to_string(Strategy::llm) == "llm");
    CHECK(parse_strategy("keyword") == Strategy::keyword);
    CHECK_FALSE(parse_strategy("psychic").has_value());
}

TEST_CASE("llm extraction repairs, validates and counts attempts") {
    auto schema = testutil::mini_schema();
    auto d = make_document("paper-7", SourceFormat::plain_text,
                           "LAMA is a corpus of 40,000 sentences.");

    auto backend = std::make_shared<MockBackend>(std::vector<MockBackend::Step>{
        {"I could not find any JSON to give you.", false, 11, 2},
        {"```json\n{\"Name\": \"LAMA\", \"Volume\": \"40,000\", \"Unit\": \"sentence\","
         " \"License\": \"mit\"}\n```",
         false, 11, 30}});
    auto ledger = std::make_shared<CostLedger>();
    auto gateway = mock_gateway(backend, ledger);

    auto run = extract_llm(d, schema, gateway, mock_config(), {});
    CHECK(run.document_id == "paper-7");
    CHECK(run.strategy == Strategy::llm);
    CHECK(run.model_id == "mock/model");
    CHECK(run.attempts_used == 2);
    CHECK(run.fraction == 1.0);
    CHECK(run.shots == 0);

    CHECK(run.record.find("Name")->as_text() == "LAMA");
    CHECK(run.record.find("Volume")->as_number() == doctest::Approx(40000.0));
    CHECK(run.record.find("Unit")->as_text() == "sentences");
    CHECK(run.record.find("License")->as_text() == "MIT License");
    // Attributes the reply skipped still exist.
    CHECK(run.record.find("Year")->as_year() == 0);

    auto rows = ledger->snapshot();
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].second.attempts == 2);
}

TEST_CASE("fraction clips the prompt to a prefix") {
    auto schema = testutil::mini_schema();
    std::string text(1000, 'a');
    text += std::string(3000, 'b');
    auto d = make_document("long-paper", SourceFormat::plain_text, text);

    auto backend = std::make_shared<MockBackend>(
        std::vector<MockBackend::Step>{{R"({"Name": "X"})", false, 0, 0}});
    auto gateway = mock_gateway(backend);

    auto run = extract_llm(d, schema, gateway, mock_config(), {}, 0.25);
    CHECK(run.fraction == 0.25);

    auto requests = backend->requests();
    REQUIRE(requests.size() == 1);
    std::string prompt = requests[0]["messages"].back()["content"].get<std::string>();
    auto expected_prefix = text.substr(0, 1000); // ceil(0.25 * 4000)
    auto marker = prompt.find("Paper Text:\n");
    REQUIRE(marker != std::string::npos);
    CHECK(prompt.compare(marker + 12, std::string::npos, expected_prefix) == 0);
}

TEST_CASE("llm extraction propagates gateway exhaustion") {
    auto schema = testutil::mini_schema();
    auto d = make_document("p", SourceFormat::plain_text, "text");
    auto backend = std::make_shared<MockBackend>(
        std::vector<MockBackend::Step>{{"never json", false, 1, 1}});
    auto gateway = mock_gateway(backend);
    CHECK_THROWS_AS(extract_llm(d, schema, gateway, mock_config(), {}), GatewayError);
    CHECK(backend->requests().size() == 6);
}

TEST_CASE("random baseline is seed-deterministic") {
    auto schema = testutil::load_fixture_schema(Category::ar);
    auto a = extract_random(schema, 1234);
    auto b = extract_random(schema, 1234);
    CHECK(a.record == b.record);
    CHECK(run_to_json(a) == run_to_json(b));

    auto c = extract_random(schema, 4321);
    CHECK(a.record != c.record);
}

TEST_CASE("random baseline samples options and defaults the rest") {
    auto schema = testutil::mini_schema();
    const auto& license_options = *schema.find("License")->options;
    const auto& domain_options = *schema.find("Domain")->options;

    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto run = extract_random(schema, seed);
        const auto& license = run.record.find("License")->as_text();
        CHECK(std::find(license_options.begin(), license_options.end(), license) !=
              license_options.end());

        const auto& domain = run.record.find("Domain")->items();
        CHECK(domain.size() >= 1);
        CHECK(domain.size() <= 3);
        for (const auto& item : domain)
            CHECK(std::find(domain_options.begin(), domain_options.end(), item) !=
                  domain_options.end());
        // Distinct items only.
        auto unique = domain;
        std::sort(unique.begin(), unique.end());
        CHECK(std::adjacent_find(unique.begin(), unique.end()) == unique.end());

        // No options, no guess.
        CHECK(run.record.find("Name")->as_text().empty());
        CHECK(run.record.find("Volume")->as_number() == 0.0);
        CHECK(run.record.find("Link")->as_text().empty());
    }
}

TEST_CASE("random baseline hits a fixed option at rate 1/k") {
    auto schema = testutil::mini_schema();
    const auto& unit_options = *schema.find("Unit")->options; // k = 3
    const std::string target = unit_options[1];
    int hits = 0;
    const int trials = 3000;
    for (int seed = 0; seed < trials; ++seed) {
        auto run = extract_random(schema, static_cast<std::uint64_t>(seed));
        if (run.record.find("Unit")->as_text() == target) ++hits;
    }
    double rate = static_cast<double>(hits) / trials;
    CHECK(rate == doctest::Approx(1.0 / 3.0).epsilon(0.1));
}

TEST_CASE("keyword baseline reads links, years, counts and options") {
    auto schema = testutil::mini_schema();
    const std::string text =
        "We present LAMA, a corpus of books released in 2019. "
        "An earlier pilot appeared in 2018, but 2019 remains the release year. "
        "The corpus contains 40,000 sentences and 12 documents. "
        "Data is available at https://example.com/lama. and mirrors exist. "
        "A test split is present: false claims were removed, which is true. "
        "The dataset uses the MIT License, not an unknown one.";
    auto d = make_document("kw", SourceFormat::plain_text, text);

    auto run = extract_keyword(d, schema);
    CHECK(run.strategy == Strategy::keyword);
    CHECK(run.record.find("Link")->as_text() == "https://example.com/lama");
    CHECK(run.record.find("Year")->as_year() == 2019); // appears twice
    CHECK(run.record.find("Volume")->as_number() == doctest::Approx(40000.0));
    CHECK(run.record.find("Unit")->as_text() == "sentences"); // earliest unit word
    CHECK(run.record.find("Test Split")->as_flag() == false); // "false" comes first
    CHECK(run.record.find("License")->as_text() == "MIT License");
    CHECK(run.record.find("Domain")->items() == std::vector<std::string>{"books"});

    // Free-text attributes stay at defaults; record lists stay empty.
    CHECK(run.record.find("Name")->as_text().empty());
    CHECK(run.record.find("Subsets")->records().empty());
}

TEST_CASE("keyword year tie breaks toward the earliest mention") {
    auto schema = testutil::mini_schema();
    auto d = make_document("tie", SourceFormat::plain_text,
                           "Work spanned 2021 and 2018, each twice overall: 2018-era and 2021.");
    auto run = extract_keyword(d, schema);
    CHECK(run.record.find("Year")->as_year() == 2021);
}

TEST_CASE("keyword baseline handles text without signals") {
    auto schema = testutil::mini_schema();
    auto d = make_document("plain", SourceFormat::plain_text,
                           "A short note with no numbers, no links, nothing at all.");
    auto run = extract_keyword(d, schema);
    CHECK(run.record.find("Link")->as_text().empty());
    CHECK(run.record.find("Year")->as_year() == 0);
    CHECK(run.record.find("Volume")->as_number() == 0.0);
}

TEST_CASE("run serialization shape") {
    auto schema = testutil::mini_schema();
    auto run = extract_random(schema, 5);
    run.document_id = "doc-5";
    auto j = run_to_json(run);

    auto it = j.begin();
    CHECK(it.key() == "document");
    CHECK(j["strategy"] == "random");
    CHECK_FALSE(j.contains("model")); // llm only
    CHECK_FALSE(j.contains("timestamp"));
    CHECK(j["fraction"] == 1.0);
    CHECK(j["record"].is_object());
    CHECK(j["validation_log"].is_array());

    run.strategy = Strategy::llm;
    run.model_id = "m";
    run.timestamp = "2024-01-01T00:00:00Z";
    auto k = run_to_json(run);
    CHECK(k["model"] == "m");
    CHECK(k["timestamp"] == "2024-01-01T00:00:00Z");
}

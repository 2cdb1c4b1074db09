#include "mole/errors.hpp"
#include "mole/text.hpp"
#include "mole/validation.hpp"

#include "support.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <random>
#include <string>
#include <vector>

using namespace mole;
using nlohmann::ordered_json;

namespace {

const Schema& schema() {
    static const Schema s = testutil::mini_schema();
    return s;
}

const AttributeSpec& attr(const char* name) { return *schema().find(name); }

} // namespace

TEST_CASE("coerce_type keeps well-typed values untouched") {
    auto [name, e1] = coerce_type(ordered_json("LAMA"), attr("Name"));
    CHECK(name == AnswerValue::text("LAMA"));
    CHECK(e1.empty());

    auto [year, e2] = coerce_type(ordered_json(2021), attr("Year"));
    CHECK(year == AnswerValue::year(2021));
    CHECK(e2.empty());

    auto [vol, e3] = coerce_type(ordered_json(2.5), attr("Volume"));
    CHECK(vol == AnswerValue::number(2.5));
    CHECK(e3.empty());

    auto [flag, e4] = coerce_type(ordered_json(true), attr("Test Split"));
    CHECK(flag == AnswerValue::flag(true));
    CHECK(e4.empty());
}

TEST_CASE("numeric and boolean text casts") {
    auto [vol, e1] = coerce_type(ordered_json("40,000"), attr("Volume"));
    CHECK(vol == AnswerValue::number(40000.0));
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].action == ValidationAction::cast);

    auto [year, e2] = coerce_type(ordered_json("published in 2019."), attr("Year"));
    CHECK(year == AnswerValue::year(2019));
    CHECK(e2.size() == 1);

    auto [flag, e3] = coerce_type(ordered_json(" True "), attr("Test Split"));
    CHECK(flag == AnswerValue::flag(true));
    CHECK(e3.size() == 1);

    auto [year3, e4] = coerce_type(ordered_json(2020.0), attr("Year"));
    CHECK(year3 == AnswerValue::year(2020));
    CHECK(e4.size() == 1);
}

TEST_CASE("impossible casts fall back to the default with a log entry") {
    auto [vol, e1] = coerce_type(ordered_json("lots of text"), attr("Volume"));
    CHECK(vol == AnswerValue::number(0.0));
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].action == ValidationAction::defaulted);

    auto [year, e2] = coerce_type(ordered_json("the nineties"), attr("Year"));
    CHECK(year == AnswerValue::year(0));
    CHECK(e2.size() == 1);

    auto [year2, e3] = coerce_type(ordered_json(1847), attr("Year"));
    CHECK(year2 == AnswerValue::year(0));
    CHECK(e3.size() == 1);

    auto [obj, e4] = coerce_type(ordered_json::parse(R"({"a": 1})"), attr("Name"));
    CHECK(obj == AnswerValue::text(""));
    CHECK(e4.size() == 1);

    auto [nul, e5] = coerce_type(ordered_json(nullptr), attr("Volume"));
    CHECK(nul == AnswerValue::number(0.0));
    CHECK(e5.size() == 1);
}

TEST_CASE("list and scalar cross-casts") {
    auto [joined, e1] = coerce_type(ordered_json::parse(R"(["news", "books"])"), attr("Name"));
    CHECK(joined == AnswerValue::text("news, books"));
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].action == ValidationAction::cast);

    auto [wrapped, e2] = coerce_type(ordered_json("news articles"), attr("Domain"));
    CHECK(wrapped == AnswerValue::text_list({"news articles"}));
    CHECK(e2.size() == 1);

    auto [mixed, e3] = coerce_type(ordered_json::parse(R"(["books", 7])"), attr("Domain"));
    CHECK(mixed == AnswerValue::text_list({"books", "7"}));
    CHECK(e3.size() == 1);

    // A list with a non-scalar element cannot be represented; whole value
    // falls back.
    auto [bad, e4] = coerce_type(ordered_json::parse(R"(["books", {"x": 1}])"), attr("Domain"));
    CHECK(bad == AnswerValue::text_list({}));
    REQUIRE(e4.size() == 1);
    CHECK(e4[0].action == ValidationAction::defaulted);
}

TEST_CASE("url coercion rejects malformed links") {
    auto [url, e1] = coerce_type(ordered_json("https://example.com/data"), attr("Link"));
    CHECK(url == AnswerValue::url("https://example.com/data"));
    CHECK(e1.empty());

    auto [bad, e2] = coerce_type(ordered_json("see the repo"), attr("Link"));
    CHECK(bad == AnswerValue::url(""));
    REQUIRE(e2.size() == 1);
    CHECK(e2[0].action == ValidationAction::defaulted);

    // Empty stays empty without an extra action.
    auto [empty, e3] = coerce_type(ordered_json(""), attr("Link"));
    CHECK(empty == AnswerValue::url(""));
    CHECK(e3.empty());
}

TEST_CASE("match_option exact hits return the canonical literal") {
    auto m = match_option("MIT License", attr("License"));
    CHECK(m.option == "MIT License");
    CHECK_FALSE(m.changed);

    auto folded = match_option("  mit license ", attr("License"));
    CHECK(folded.option == "MIT License");
    CHECK(folded.changed);

    CHECK_THROWS_AS(match_option("anything", attr("Name")), SchemaError);
}

TEST_CASE("match_option picks the highest-similarity option") {
    auto m = match_option("Apache 2.0", attr("License"));
    CHECK(m.option == "Apache-2.0");
    CHECK(m.changed);

    // Verified against the whole option list by brute force.
    auto ar = testutil::load_fixture_schema(Category::ar);
    const auto& license = *ar.find("License");
    auto best_by_hand = [&](const std::string& value) {
        std::string folded = fold_case(trim(value));
        double best = -1.0;
        std::string chosen;
        for (const auto& opt : *license.options) {
            double sim = 1.0 - normalized_edit_distance(folded, fold_case(trim(opt)));
            if (sim > best) {
                best = sim;
                chosen = opt;
            }
        }
        return chosen;
    };
    for (const std::string probe : {"MIT", "apache", "CC BY 4", "GPL", "custom license"}) {
        CAPTURE(probe);
        CHECK(match_option(probe, license).option == best_by_hand(probe));
    }
    CHECK(match_option("MIT", license).option == "MIT License");
}

TEST_CASE("ties break in option file order") {
    AttributeSpec tie;
    tie.name = "Tie";
    tie.options = std::vector<std::string>{"ab", "ba"};
    tie.answer_type = AnswerType::parse("str");
    auto m = match_option("aa", tie); // distance 1 to both
    CHECK(m.option == "ab");
}

TEST_CASE("validate_record fills, coerces, snaps and logs") {
    auto raw = ordered_json::parse(R"({
        "Name": "LAMA Corpus",
        "Link": "https://example.com/lama",
        "License": "mit",
        "Year": "2021",
        "Domain": ["news", "unheard of domain"],
        "Volume": "12,345",
        "Unit": "token",
        "Test Split": "true",
        "Stray": 9
    })");
    auto [record, log] = validate_record(raw, schema());

    REQUIRE(record.values.size() == schema().attributes.size());
    CHECK(record.find("Name")->as_text() == "LAMA Corpus");
    CHECK(record.find("License")->as_text() == "MIT License");
    CHECK(record.find("Year")->as_year() == 2021);
    CHECK(record.find("Volume")->as_number() == doctest::Approx(12345.0));
    CHECK(record.find("Unit")->as_text() == "tokens");
    CHECK(record.find("Test Split")->as_flag() == true);
    CHECK(record.find("Domain")->items()[0] == "news articles");

    // Absent attributes default: Subsets and Description.
    CHECK(record.find("Subsets")->records().empty());
    CHECK(record.find("Description")->as_text().empty());

    CHECK(log.count(ValidationAction::key_dropped) == 1);
    CHECK(log.count(ValidationAction::option_matched) >= 3);
    // "Subsets" is optional so no violation there, but "Description" with
    // min 0 is fine too; missing mandatory ones logged as defaulted.
    CHECK(log.count(ValidationAction::defaulted) >= 1);
}

TEST_CASE("length violations observe but never truncate") {
    ordered_json raw;
    raw["Name"] = "a very long name made of seven words";         // 8 words, max 5
    raw["Domain"] = ordered_json::array({"books", "web pages", "news articles", "other"});
    auto [record, log] = validate_record(raw, schema());

    CHECK(word_count(record.find("Name")->as_text()) == 8);
    CHECK(record.find("Domain")->items().size() == 4); // max 3, kept anyway
    CHECK(log.count(ValidationAction::length_violation) >= 2);

    bool name_violation = false;
    for (const auto& e : log.entries)
        if (e.attribute == "Name" && e.action == ValidationAction::length_violation)
            name_violation = true;
    CHECK(name_violation);
}

TEST_CASE("empty answers skip option matching") {
    ordered_json raw;
    raw["License"] = "";
    raw["Domain"] = ordered_json::array({"", "books"});
    auto [record, log] = validate_record(raw, schema());
    CHECK(record.find("License")->as_text() == "");
    CHECK(record.find("Domain")->items()[0] == "");
    for (const auto& e : log.entries)
        CHECK(e.action != ValidationAction::option_matched);
}

TEST_CASE("keyed records fill missing keys and drop unknown ones") {
    auto raw = ordered_json::parse(R"({
        "Subsets": [
            {"Name": "part-a", "Volume": 100, "Unit": "token", "Extra": "x"},
            {"Name": "part-b"}
        ]
    })");
    auto [record, log] = validate_record(raw, schema());
    const auto& records = record.find("Subsets")->records();
    REQUIRE(records.size() == 2);
    REQUIRE(records[0].size() == 3);
    CHECK(records[0][0].first == "Name");
    CHECK(std::get<std::string>(records[0][0].second) == "part-a");
    CHECK(std::get<double>(records[0][1].second) == doctest::Approx(100.0));
    // Unit snapped to its option list through the same-named attribute.
    CHECK(std::get<std::string>(records[0][2].second) == "tokens");

    // part-b: Volume defaults to the peer attribute's numeric default.
    CHECK(std::get<double>(records[1][1].second) == doctest::Approx(0.0));
    CHECK(std::get<std::string>(records[1][2].second) == "");

    CHECK(log.count(ValidationAction::key_dropped) == 1);
    CHECK(log.count(ValidationAction::defaulted) >= 2);
}

TEST_CASE("flag attributes skip option matching") {
    ordered_json raw;
    raw["Test Split"] = "yes please"; // not castable
    auto [record, log] = validate_record(raw, schema());
    CHECK(record.find("Test Split")->as_flag() == false);
    for (const auto& e : log.entries)
        CHECK(e.action != ValidationAction::option_matched);
}

TEST_CASE("validate_record is total and idempotent on fuzzed objects") {
    std::mt19937_64 rng(777);
    const auto& s = schema();

    auto random_scalar = [&]() -> ordered_json {
        switch (rng() % 6) {
        case 0: return ordered_json(static_cast<std::int64_t>(rng() % 5000));
        case 1: return ordered_json(static_cast<double>(rng() % 1000) / 8.0);
        case 2: return ordered_json(rng() % 2 == 0);
        case 3: return ordered_json("text " + std::to_string(rng() % 100));
        case 4: return ordered_json("2021");
        default: return ordered_json(nullptr);
        }
    };
    auto random_value = [&]() -> ordered_json {
        switch (rng() % 4) {
        case 0: return random_scalar();
        case 1: {
            auto arr = ordered_json::array();
            for (std::size_t i = 0, n = rng() % 4; i < n; ++i) arr.push_back(random_scalar());
            return arr;
        }
        case 2: {
            auto obj = ordered_json::object();
            obj["Name"] = "sub";
            if (rng() % 2) obj["Volume"] = static_cast<double>(rng() % 100);
            if (rng() % 2) obj["Junk"] = "dropped";
            auto arr = ordered_json::array();
            arr.push_back(obj);
            return arr;
        }
        default: {
            auto obj = ordered_json::object();
            obj["k"] = random_scalar();
            return obj;
        }
        }
    };

    for (int trial = 0; trial < 200; ++trial) {
        ordered_json raw = ordered_json::object();
        for (const auto& spec : s.attributes)
            if (rng() % 3 != 0) raw[spec.name] = random_value();
        if (rng() % 2) raw["Unknown " + std::to_string(rng() % 5)] = random_scalar();

        auto [record, log] = validate_record(raw, s);
        REQUIRE(record.values.size() == s.attributes.size());
        for (std::size_t i = 0; i < s.attributes.size(); ++i) {
            CHECK(record.values[i].first == s.attributes[i].name);
            CHECK(record.values[i].second.tag() == s.attributes[i].answer_type.tag);
        }

        auto [again, log2] = validate_record(record_to_json(record), s);
        CHECK(again == record);
        CHECK_FALSE(log2.has_corrective());
    }
}

TEST_CASE("validation log serializes with stable fields") {
    ordered_json raw;
    raw["License"] = "mit";
    auto [record, log] = validate_record(raw, schema());
    auto j = log_to_json(log);
    REQUIRE(j.is_array());
    REQUIRE(!j.empty());
    for (const auto& entry : j) {
        CHECK(entry.contains("attribute"));
        CHECK(entry.contains("action"));
        CHECK(entry.contains("detail"));
    }
}

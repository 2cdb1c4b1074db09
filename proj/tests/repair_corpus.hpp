#pragma once

#include <string>
#include <utility>
#include <vector>

namespace testutil {

struct RepairCase {
    std::string raw;            // what the model printed
    std::string expected_json;  // canonical JSON it must repair to
};

/// Malformed-but-recoverable model outputs: fenced, prose-wrapped, trailing
/// commas, stray wrappers. Every case must repair to expected_json.
inline const std::vector<RepairCase>& repairable_corpus() {
    static const std::vector<RepairCase> cases = {
        {R"({"Name": "X"})", R"({"Name":"X"})"},
        {"   {\"Name\": \"X\"}   \n", R"({"Name":"X"})"},
        {"```json\n{\"Name\": \"X\"}\n```", R"({"Name":"X"})"},
        {"```JSON\n{\"A\": 1}\n```", R"({"A":1})"},
        {"```\n{\"A\": 1}\n```", R"({"A":1})"},
        {"json\n{\"A\": 1}", R"({"A":1})"},
        {"Here is the metadata: {\"Name\": \"X\"} hope this helps!", R"({"Name":"X"})"},
        {"The answer:\n{\"Name\": \"X\", \"Volume\": 100}\nLet me know.",
         R"({"Name":"X","Volume":100})"},
        {R"({"Name": "X",})", R"({"Name":"X"})"},
        {R"({"Domain": ["news articles",], "Volume": 5,})",
         R"({"Domain":["news articles"],"Volume":5})"},
        {"```json\n{\"Name\": \"X\",}\n```", R"({"Name":"X"})"},
        {"prose {\"a\": {\"b\": [1, 2,],},} more prose", R"({"a":{"b":[1,2]}})"},
        {"out: {\"Note\": \"brace } in string\", \"k\": 1} done",
         R"({"Note":"brace } in string","k":1})"},
        {"{\"Quote\": \"she said \\\"hi\\\" {\", \"k\": 2} trailing",
         R"({"Quote":"she said \"hi\" {","k":2})"},
        {"First object {\"a\": 1} then another {\"b\": 2}", R"({"a":1})"},
        {"```json{\"inline\": true}```", R"({"inline":true})"},
        {"{\n  \"Name\": \"X\",\n  \"Tasks\": [\"ner\", \"qa\",],\n}",
         R"({"Name":"X","Tasks":["ner","qa"]})"},
        {"Sure!\n```json\n{\"Name\": \"X\"}\n```\n", R"({"Name":"X"})"},
        {"{\"Volume\": 1000, \"Nested\": {\"deep\": {\"deeper\": true}}} extra ]",
         R"({"Volume":1000,"Nested":{"deep":{"deeper":true}}})"},
        {R"([{"Name": "X"}])", R"({"Name":"X"})"},
    };
    return cases;
}

/// Outputs with no recoverable object at all.
inline const std::vector<std::string>& irreparable_corpus() {
    static const std::vector<std::string> cases = {
        "",
        "no json here at all",
        R"({"Name": "X")",
        R"({ "a": })",
        "[1, 2, 3]",
    };
    return cases;
}

} // namespace testutil

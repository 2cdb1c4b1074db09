#pragma once

#include "mole/errors.hpp"
#include "mole/schema.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testutil {

inline std::filesystem::path data_dir() {
    const char* env = std::getenv("MOLE_DATA_DIR");
    if (!env || !*env)
        throw std::runtime_error("MOLE_DATA_DIR is not set; run through ctest");
    return std::filesystem::path(env);
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

inline mole::Schema load_fixture_schema(mole::Category category) {
    const auto path = data_dir() / "schemas" / (mole::to_string(category) + ".json");
    return mole::parse_schema(read_file(path), category);
}

/// Small schema covering every answer shape and validation group, for tests
/// that do not need the full fixture files.
inline mole::Schema mini_schema() {
    static const char* text = R"({
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
        "answer_max": 5
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
        "options": ["Apache-2.0", "MIT License", "unknown"],
        "answer_type": "str",
        "validation_group": "ACCESSIBILITY",
        "answer_min": 1,
        "answer_max": 1
    },
    "Year": {
        "question": "What year was the dataset published?",
        "answer_type": "date[year]",
        "answer_min": 1,
        "answer_max": 1
    },
    "Domain": {
        "question": "What is the domain of the dataset?",
        "options": ["news articles", "books", "web pages", "other"],
        "answer_type": "List[str]",
        "validation_group": "CONTENT",
        "answer_min": 1,
        "answer_max": 3
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
        "options": ["tokens", "sentences", "documents"],
        "answer_type": "str",
        "validation_group": "CONTENT",
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
})";
    return mole::parse_schema(text);
}

/// Unique scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng{std::random_device{}()};
        auto base = std::filesystem::temp_directory_path();
        for (;;) {
            path_ = base / (tag + "-" + std::to_string(rng()));
            if (std::filesystem::create_directory(path_)) break;
        }
    }

    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }

    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace testutil

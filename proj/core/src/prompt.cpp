#include "mole/prompt.hpp"

#include "mole/errors.hpp"
#include "mole/rng.hpp"
#include "mole/text.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace mole {

namespace {

constexpr const char* kSystemPrompt =
    "You are a professional research paper reader. You will be provided 'Input schema' and "
    "'Paper Text' and you must respond with an 'Output JSON'.\n"
    "The 'Output Schema' is a JSON with the following format key:answer where the answer "
    "represents an answer to the question.\n"
    "The 'Input Schema' has the following main fields for each key:\n"
    "'question': A question that needs to be answered.\n"
    "'options' : If the 'question' has 'options' then the question can be answered by choosing "
    "one or more options depending on 'answer_min' and 'answer_max'\n"
    "'options_description': A description of the 'options' that might be unclear. Use the "
    "descriptions to understand the options.\n"
    "'answer_type': the type of the answer to the 'question'. The answer must follow the type "
    "of the answer.\n"
    "'answer_min' : If the 'answer_type' is List[str], then it defines the minimum number of "
    "list items in the answer. Otherwise it defines the minimum number of words in the answer.\n"
    "'answer_max' : If the 'answer_type' is List[str], then it defines the maximum number of "
    "list items in the answer. Otherwise it defines the maximum number of words in the answer.\n"
    "The answer must be the same type as 'answer_type' and its length must be in the range "
    "['answer_min', 'answer_max']. If answer_min = answer_max then the length of answer MUST "
    "be answer_min.\n"
    "The 'Output JSON' is a JSON that can be parsed using Python `json.load()`. USE double "
    "quotes \"\" not single quotes '' for the keys and values.\n"
    "The 'Output JSON' has ONLY the keys: '{columns}'. The value for each key is the answer to "
    "the 'question' that represents the same key in the 'Input Schema'.";

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string frame_user_message(const Schema& schema, const std::string& paper_text) {
    return "Input schema:\n" + schema.prompt_text() + "\n\nPaper Text:\n" + paper_text;
}

std::string language_word(Category c) {
    switch (c) {
    case Category::ar: return "Arabic";
    case Category::en: return "English";
    case Category::fr: return "French";
    case Category::jp: return "Japanese";
    case Category::ru: return "Russian";
    case Category::multi: return "multilingual";
    }
    return "unknown";
}

const AttributeSpec& require_options(const Schema& schema, const std::string& name) {
    const AttributeSpec* spec = schema.find(name);
    if (spec == nullptr)
        throw SchemaError(name, "template generation needs this attribute");
    if (!spec->has_options())
        throw SchemaError(name, "template generation needs an option list here");
    return *spec;
}

/// Options whose own length satisfies the attribute bounds, so the gold
/// record validates without length findings. Word count applies to scalar
/// answers only; list items are counted per item elsewhere.
std::vector<std::string> in_bounds_options(const AttributeSpec& spec) {
    const auto& options = *spec.options;
    if (spec.answer_type.is_list()) return options;
    std::vector<std::string> fit;
    for (const auto& opt : options) {
        auto words = word_count(opt);
        if (words < static_cast<std::size_t>(std::max(spec.answer_min, 0))) continue;
        if (spec.answer_max && words > static_cast<std::size_t>(*spec.answer_max)) continue;
        fit.push_back(opt);
    }
    return fit.empty() ? options : fit;
}

std::string sample_option(SeededRng& rng, const AttributeSpec& spec) {
    auto candidates = in_bounds_options(spec);
    return candidates[rng.below(candidates.size())];
}

std::vector<std::string> sample_option_list(SeededRng& rng, const AttributeSpec& spec) {
    const auto& options = *spec.options;
    auto lo = static_cast<std::size_t>(std::max(spec.answer_min, 1));
    std::size_t hi = options.size();
    if (spec.answer_max) hi = std::min(hi, static_cast<std::size_t>(*spec.answer_max));
    lo = std::min(lo, options.size());
    if (hi < lo) hi = lo;
    std::size_t k = lo + rng.below(hi - lo + 1);

    std::vector<std::string> picked;
    for (std::size_t index : sample_distinct(rng, options.size(), k))
        picked.push_back(options[index]);
    return picked;
}

/// Pads or trims filler text so its word count lands inside the bounds.
std::string fit_words(std::string text, const AttributeSpec& spec) {
    auto words = split_words(text);
    auto lo = static_cast<std::size_t>(std::max(spec.answer_min, 0));
    while (words.size() < lo) words.emplace_back("synthetic");
    if (spec.answer_max && words.size() > static_cast<std::size_t>(*spec.answer_max))
        words.resize(static_cast<std::size_t>(*spec.answer_max));
    return join(words, " ");
}

std::string format_volume(std::int64_t volume) { return std::to_string(volume); }

struct TemplateDraw {
    std::vector<std::string> tasks;
    std::string unit;
    std::string collection_style;
    std::vector<std::string> domains;
    std::string license;
    std::int64_t volume = 0;
    std::int64_t year = 0;
    bool provider_stmt = false;
    bool license_stmt = false;
    bool hf_stmt = false;
    std::vector<std::string> languages; // multilingual only
};

const char* kName = "SynthCorpus";
const char* kAuthors[] = {"John Doe", "Jane Smith"};
const char* kAffiliation = "Synthetic Research Institute";
const char* kLink = "https://example.com/synthcorpus";
const char* kHfLink = "https://huggingface.co/datasets/synthetic/synthcorpus";
const char* kPaperLink = "https://example.com/synthcorpus/paper.pdf";
const char* kProvider = "SynthLab";

TemplateDraw draw_template(SeededRng& rng, const Schema& schema) {
    TemplateDraw d;
    d.tasks = sample_option_list(rng, require_options(schema, "Tasks"));
    d.unit = sample_option(rng, require_options(schema, "Unit"));
    d.collection_style = sample_option(rng, require_options(schema, "Collection Style"));
    const AttributeSpec& domain = require_options(schema, "Domain");
    if (domain.answer_type.is_list())
        d.domains = sample_option_list(rng, domain);
    else
        d.domains = {sample_option(rng, domain)};
    d.license = sample_option(rng, require_options(schema, "License"));
    d.volume = rng.range(1000, 1000000);
    d.year = rng.range(2000, 2025);
    d.provider_stmt = rng.coin();
    d.license_stmt = rng.coin();
    d.hf_stmt = rng.coin();
    if (schema.category == Category::multi) {
        const AttributeSpec* lang = schema.find("Language");
        if (lang == nullptr || !lang->has_options())
            throw SchemaError("Language", "multilingual template needs language options");
        d.languages = sample_option_list(rng, *lang);
    }
    return d;
}

std::string render_language_table(const TemplateDraw& d, SeededRng& rng,
                                  std::vector<KeyedRecord>& subsets,
                                  const AttributeSpec& subsets_spec) {
    std::ostringstream table;
    table << "The dataset covers the following language subsets:\n";
    table << "Name | Volume | Unit | Language\n";
    for (const auto& lang : d.languages) {
        auto volume = rng.range(1000, 100000);
        table << lang << " subset | " << volume << " | " << d.unit << " | " << lang << "\n";
        KeyedRecord record;
        for (const auto& key : subsets_spec.answer_type.key_names) {
            if (key == "Name")
                record.emplace_back(key, lang + std::string(" subset"));
            else if (key == "Volume")
                record.emplace_back(key, static_cast<double>(volume));
            else if (key == "Unit")
                record.emplace_back(key, d.unit);
            else if (key == "Language")
                record.emplace_back(key, lang);
            else
                record.emplace_back(key, std::string());
        }
        subsets.push_back(std::move(record));
    }
    return table.str();
}

std::string render_paper_text(const TemplateDraw& d, const std::string& language_table,
                              const std::string& schema_word) {
    const std::string& task = d.tasks.front();
    const std::string& domain = d.domains.front();
    std::ostringstream text;
    text << kName << ": A " << task << " dataset for " << schema_word << "\n";
    text << kAuthors[0] << ", " << kAuthors[1] << "\n";
    text << kAffiliation << "\n";
    text << kName << ", is a " << schema_word << " " << task << " dataset, that contains "
         << format_volume(d.volume) << " " << d.unit << ".\n";
    if (!language_table.empty()) text << language_table;
    if (d.provider_stmt) text << "The dataset is provided by " << kProvider << ". ";
    text << "The dataset was collected from " << d.collection_style << " of " << domain
         << " in " << d.year << ".\n";
    text << "The dataset is publicly available through this link " << kLink << ".";
    if (d.license_stmt) text << " The dataset is licensed under " << d.license << ".";
    text << "\n";
    if (d.hf_stmt)
        text << "The dataset is also hosted on HuggingFace " << kHfLink << ".\n";
    return text.str();
}

// Links are stored under the tag the schema declares; Paper Link is a plain
// string attribute in the shipped schemas while Link and HF Link are urls.
AnswerValue typed_link(const AttributeSpec& spec, std::string url) {
    if (spec.answer_type.tag == AnswerTag::Url) return AnswerValue::url(std::move(url));
    return AnswerValue::text(std::move(url));
}

AnswerValue fill_attribute(const AttributeSpec& spec, const TemplateDraw& d, SeededRng& rng,
                           const std::string& schema_word, const std::string& description,
                           const std::vector<KeyedRecord>& subsets) {
    const std::string& name = spec.name;
    if (name == "Name") return AnswerValue::text(fit_words(kName, spec));
    if (name == "Volume") return AnswerValue::number(static_cast<double>(d.volume));
    if (name == "Year") return AnswerValue::year(d.year);
    if (name == "Link") return typed_link(spec, kLink);
    if (name == "Paper Link") return typed_link(spec, kPaperLink);
    if (name == "HF Link") return typed_link(spec, d.hf_stmt ? kHfLink : "");
    if (name == "License") return AnswerValue::text(d.license);
    if (name == "Tasks") return AnswerValue::text_list(d.tasks);
    if (name == "Unit") return AnswerValue::text(d.unit);
    if (name == "Collection Style") {
        if (spec.answer_type.is_list()) return AnswerValue::text_list({d.collection_style});
        return AnswerValue::text(d.collection_style);
    }
    if (name == "Domain") {
        if (spec.answer_type.is_list()) return AnswerValue::text_list(d.domains);
        return AnswerValue::text(d.domains.front());
    }
    if (name == "Language") {
        // Keep the answer coherent with the rendered text: the language
        // table for multilingual sets, the category's own code otherwise.
        if (spec.answer_type.is_list()) return AnswerValue::text_list(d.languages);
        if (spec.has_options()) return AnswerValue::text(spec.options->front());
    }
    if (name == "Description") return AnswerValue::text(fit_words(description, spec));
    if (name == "Provider") {
        std::vector<std::string> v;
        if (d.provider_stmt || spec.answer_min > 0) v.emplace_back(kProvider);
        return AnswerValue::text_list(std::move(v));
    }
    if (name == "Authors")
        return AnswerValue::text_list({kAuthors[0], kAuthors[1]});
    if (name == "Affiliations")
        return AnswerValue::text_list({kAffiliation});
    if (name == "Paper Title")
        return AnswerValue::text(
            fit_words(std::string(kName) + ": A " + d.tasks.front() + " dataset for " +
                          schema_word,
                      spec));
    if (name == "Subsets") return AnswerValue::keyed_records(subsets);

    // Anything the template does not name: sample options when present,
    // otherwise the smallest in-bounds filler.
    switch (spec.answer_type.tag) {
    case AnswerTag::Flag: return AnswerValue::flag(rng.coin());
    case AnswerTag::Year: return AnswerValue::year(d.year);
    case AnswerTag::Number: return AnswerValue::number(static_cast<double>(d.volume));
    case AnswerTag::Url:
        return AnswerValue::url(spec.answer_min > 0 ? kLink : "");
    case AnswerTag::Text:
        if (spec.has_options()) return AnswerValue::text(sample_option(rng, spec));
        return AnswerValue::text(spec.answer_min > 0 ? fit_words("synthetic", spec) : "");
    case AnswerTag::TextList:
        if (spec.has_options()) return AnswerValue::text_list(sample_option_list(rng, spec));
        if (spec.answer_min > 0) {
            std::vector<std::string> v(static_cast<std::size_t>(spec.answer_min), "synthetic");
            return AnswerValue::text_list(std::move(v));
        }
        return AnswerValue::text_list({});
    case AnswerTag::KeyedRecordList: return AnswerValue::keyed_records({});
    }
    return default_answer(spec);
}

} // namespace

std::string to_string(Message::Role role) {
    switch (role) {
    case Message::Role::system: return "system";
    case Message::Role::user: return "user";
    case Message::Role::assistant: return "assistant";
    }
    return "unknown";
}

nlohmann::ordered_json to_json(const Message& m) {
    return {{"role", to_string(m.role)}, {"content", m.content}};
}

nlohmann::ordered_json to_json(const MessageSequence& messages) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& m : messages) out.push_back(to_json(m));
    return out;
}

std::string build_system_prompt(const Schema& schema) {
    std::vector<std::string> names;
    names.reserve(schema.attributes.size());
    for (const auto& attr : schema.attributes) names.push_back(attr.name);

    std::string prompt = kSystemPrompt;
    const std::string slot = "{columns}";
    auto pos = prompt.find(slot);
    prompt.replace(pos, slot.size(), join(names, ", "));
    return prompt;
}

MessageSequence build_extraction_request(const Schema& schema, const Document& d,
                                         const std::vector<SyntheticExample>& shots) {
    MessageSequence messages;
    messages.push_back({Message::Role::system, build_system_prompt(schema)});
    for (const auto& shot : shots) {
        messages.push_back({Message::Role::user, frame_user_message(schema, shot.paper_text)});
        messages.push_back({Message::Role::assistant, record_to_json(shot.gold).dump()});
    }
    messages.push_back({Message::Role::user, frame_user_message(schema, d.text)});
    return messages;
}

std::vector<SyntheticExample> generate_synthetic_examples(const Schema& schema, std::size_t n,
                                                          std::uint64_t seed) {
    std::vector<SyntheticExample> examples;
    examples.reserve(n);
    const std::string schema_word = language_word(schema.category);

    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t example_seed = SeededRng::mix(seed, i);
        SeededRng rng(example_seed);
        TemplateDraw d = draw_template(rng, schema);

        std::vector<KeyedRecord> subsets;
        std::string language_table;
        if (schema.category == Category::multi && schema.has("Subsets"))
            language_table = render_language_table(d, rng, subsets, *schema.find("Subsets"));

        std::string description = std::string(kName) + " is a " + schema_word + " " +
                                  d.tasks.front() + " dataset that contains " +
                                  format_volume(d.volume) + " " + d.unit;

        SyntheticExample example;
        example.seed = example_seed;
        example.paper_text = render_paper_text(d, language_table, schema_word);
        example.gold.schema_category = schema.category;
        for (const auto& spec : schema.attributes)
            example.gold.values.emplace_back(
                spec.name, fill_attribute(spec, d, rng, schema_word, description, subsets));
        examples.push_back(std::move(example));
    }
    return examples;
}

} // namespace mole

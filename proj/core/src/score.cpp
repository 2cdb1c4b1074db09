#include "mole/score.hpp"

#include "mole/errors.hpp"
#include "mole/text.hpp"
#include "mole/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <set>
#include <sstream>

namespace mole {

bool GoldRecord::exists(std::string_view name) const {
    for (const auto& [attr, bit] : exists_in_paper)
        if (attr == name) return bit;
    return false;
}

GoldRecord parse_gold(std::string_view raw_text, const Schema& schema) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(raw_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw Error("gold annotation is not a JSON object");
    if (!j.contains("category") || !j["category"].is_string())
        throw Error("gold annotation needs a category");
    auto category = parse_category(j["category"].get<std::string>());
    if (!category) throw Error("unknown gold category: " + j["category"].get<std::string>());
    if (*category != schema.category)
        throw Error("gold category does not match the schema");

    GoldRecord gold;
    gold.category = *category;
    gold.paper_id = j.value("paper_id", std::string());
    if (j.contains("publication_year") && j["publication_year"].is_number_integer())
        gold.publication_year = j["publication_year"].get<int>();

    if (!j.contains("metadata") || !j["metadata"].is_object())
        throw Error("gold annotation needs a metadata object");
    gold.values = validate_record(j["metadata"], schema).first;

    nlohmann::ordered_json exists =
        j.contains("exists") ? j["exists"] : nlohmann::ordered_json::object();
    for (const auto& spec : schema.attributes) {
        bool bit = false;
        if (auto it = exists.find(spec.name); it != exists.end()) {
            if (it->is_boolean())
                bit = it->get<bool>();
            else if (it->is_number())
                bit = it->get<double>() != 0.0;
        }
        gold.exists_in_paper.emplace_back(spec.name, bit);
    }
    return gold;
}

namespace {

bool numbers_match(double a, double b) {
    if (a == b) return true;
    return std::fabs(a - b) <= 1e-9 * std::max(std::fabs(a), std::fabs(b));
}

std::string canon_text(std::string_view s) { return fold_case(trim(s)); }

std::string canon_url(std::string_view s) {
    std::string url = trim(s);
    if (!url.empty() && url.back() == '/') url.pop_back();
    return url;
}

bool scalars_match(const RecordScalar& a, const RecordScalar& b) {
    if (a.index() == b.index()) {
        if (const auto* sa = std::get_if<std::string>(&a))
            return canon_text(*sa) == canon_text(std::get<std::string>(b));
        if (const auto* da = std::get_if<double>(&a))
            return numbers_match(*da, std::get<double>(b));
        return std::get<bool>(a) == std::get<bool>(b);
    }
    // Mixed representations: compare numerically or as folded text.
    const auto as_number = [](const RecordScalar& v) -> std::optional<double> {
        if (const auto* d = std::get_if<double>(&v)) return *d;
        if (const auto* s = std::get_if<std::string>(&v)) {
            std::string t = trim(*s);
            t.erase(std::remove(t.begin(), t.end(), ','), t.end());
            if (t.empty()) return std::nullopt;
            char* end = nullptr;
            double value = std::strtod(t.c_str(), &end);
            if (end == t.c_str() + t.size()) return value;
        }
        return std::nullopt;
    };
    const auto as_text = [](const RecordScalar& v) -> std::string {
        if (const auto* s = std::get_if<std::string>(&v)) return canon_text(*s);
        if (const auto* d = std::get_if<double>(&v)) {
            std::ostringstream out;
            out << *d;
            return out.str();
        }
        return std::get<bool>(v) ? "true" : "false";
    };
    auto na = as_number(a);
    auto nb = as_number(b);
    if (na && nb) return numbers_match(*na, *nb);
    return as_text(a) == as_text(b);
}

bool records_match(const KeyedRecord& a, const KeyedRecord& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [key, value] : a) {
        auto it = std::find_if(b.begin(), b.end(),
                               [&key = key](const auto& kv) { return kv.first == key; });
        if (it == b.end() || !scalars_match(value, it->second)) return false;
    }
    return true;
}

// |pred triangle gold| <= 1 under greedy maximum matching.
template <typename T, typename Eq>
bool symmetric_difference_within_one(const std::vector<T>& pred, const std::vector<T>& gold,
                                     Eq eq) {
    std::vector<bool> used(gold.size(), false);
    std::size_t matched = 0;
    for (const auto& p : pred) {
        for (std::size_t j = 0; j < gold.size(); ++j) {
            if (used[j] || !eq(p, gold[j])) continue;
            used[j] = true;
            ++matched;
            break;
        }
    }
    return (pred.size() - matched) + (gold.size() - matched) <= 1;
}

bool text_sets_within_one(const std::vector<std::string>& pred,
                          const std::vector<std::string>& gold) {
    std::set<std::string> ps;
    std::set<std::string> gs;
    for (const auto& s : pred) ps.insert(canon_text(s));
    for (const auto& s : gold) gs.insert(canon_text(s));
    std::size_t diff = 0;
    for (const auto& s : ps) diff += gs.count(s) == 0 ? 1 : 0;
    for (const auto& s : gs) diff += ps.count(s) == 0 ? 1 : 0;
    return diff <= 1;
}

} // namespace

double match_values(const AnswerValue& pred, const AnswerValue& gold, const AttributeSpec& spec) {
    if (pred.tag() != gold.tag()) return 0.0;
    switch (spec.answer_type.tag) {
    case AnswerTag::Text:
        return canon_text(pred.as_text()) == canon_text(gold.as_text()) ? 1.0 : 0.0;
    case AnswerTag::Url:
        return canon_url(pred.as_text()) == canon_url(gold.as_text()) ? 1.0 : 0.0;
    case AnswerTag::Year: return pred.as_year() == gold.as_year() ? 1.0 : 0.0;
    case AnswerTag::Number: return numbers_match(pred.as_number(), gold.as_number()) ? 1.0 : 0.0;
    case AnswerTag::Flag: return pred.as_flag() == gold.as_flag() ? 1.0 : 0.0;
    case AnswerTag::TextList:
        return text_sets_within_one(pred.items(), gold.items()) ? 1.0 : 0.0;
    case AnswerTag::KeyedRecordList:
        return symmetric_difference_within_one(pred.records(), gold.records(), records_match)
                   ? 1.0
                   : 0.0;
    }
    return 0.0;
}

PaperScore score_paper(const MetadataRecord& rec, const GoldRecord& gold, const Schema& schema) {
    if (rec.schema_category != gold.category)
        throw Error("prediction and gold annotation disagree on the category");

    PaperScore score;
    score.category = gold.category;
    score.paper_id = gold.paper_id;
    score.publication_year = gold.publication_year;

    double recall_sum = 0.0;
    std::size_t recall_n = 0;
    double precision_sum = 0.0;
    std::size_t precision_n = 0;

    for (const auto& spec : schema.attributes) {
        const AnswerValue* predicted = rec.find(spec.name);
        const AnswerValue* expected = gold.values.find(spec.name);
        if (predicted == nullptr || expected == nullptr)
            throw Error("record is missing attribute " + spec.name);
        double m = match_values(*predicted, *expected, spec);
        score.attribute_scores.emplace_back(spec.name, m);

        if (!spec.validation_group) continue; // general attributes are unscored
        if (gold.exists(spec.name)) {
            recall_sum += m;
            ++recall_n;
        }
        if (*predicted != default_answer(spec)) {
            precision_sum += m;
            ++precision_n;
        }
    }

    score.recall = recall_n ? 100.0 * recall_sum / static_cast<double>(recall_n) : 0.0;
    score.precision =
        precision_n ? 100.0 * precision_sum / static_cast<double>(precision_n) : 0.0;
    double pr = score.precision + score.recall;
    score.f1 = pr > 0.0 ? 2.0 * score.precision * score.recall / pr : 0.0;
    return score;
}

double length_adherence(const MetadataRecord& rec, const Schema& schema) {
    if (schema.attributes.empty()) return 1.0;
    std::size_t adherent = 0;
    for (const auto& spec : schema.attributes) {
        const AnswerValue* value = rec.find(spec.name);
        if (value == nullptr) continue;
        std::size_t len = value->length();
        bool below = len < static_cast<std::size_t>(std::max(spec.answer_min, 0));
        bool above = spec.answer_max && len > static_cast<std::size_t>(*spec.answer_max);
        if (!below && !above) ++adherent;
    }
    return static_cast<double>(adherent) / static_cast<double>(schema.attributes.size());
}

ScoreReport aggregate_report(const std::vector<PaperScore>& scores,
                             const std::map<Category, Schema>& schemas,
                             const AggregateFilters& filters) {
    std::vector<const PaperScore*> kept;
    for (const auto& score : scores) {
        if (filters.published_after &&
            (!score.publication_year || *score.publication_year <= *filters.published_after))
            continue;
        kept.push_back(&score);
    }
    if (kept.empty()) throw Error("no paper scores to aggregate");

    ScoreReport report;
    report.papers = kept.size();

    std::map<Category, ScoreReport::CategoryRow> by_category;
    double p_sum = 0.0;
    double r_sum = 0.0;
    double f_sum = 0.0;
    for (const PaperScore* score : kept) {
        auto& row = by_category[score->category];
        row.category = score->category;
        row.papers += 1;
        row.precision += score->precision;
        row.recall += score->recall;
        row.f1 += score->f1;
        p_sum += score->precision;
        r_sum += score->recall;
        f_sum += score->f1;
    }
    for (auto& [category, row] : by_category) {
        auto n = static_cast<double>(row.papers);
        row.precision /= n;
        row.recall /= n;
        row.f1 /= n;
        report.categories.push_back(row);
    }
    auto total = static_cast<double>(kept.size());
    report.precision = p_sum / total;
    report.recall = r_sum / total;
    report.weighted_f1 = f_sum / total;

    // Attribute means over every paper that scored the attribute.
    std::vector<std::pair<std::string, std::pair<double, std::size_t>>> attr_totals;
    const auto attr_slot = [&](const std::string& name) -> std::pair<double, std::size_t>& {
        for (auto& [attr, slot] : attr_totals)
            if (attr == name) return slot;
        attr_totals.emplace_back(name, std::make_pair(0.0, std::size_t{0}));
        return attr_totals.back().second;
    };
    for (const PaperScore* score : kept) {
        for (const auto& [attr, m] : score->attribute_scores) {
            auto& slot = attr_slot(attr);
            slot.first += m;
            slot.second += 1;
        }
    }
    for (const auto& [attr, slot] : attr_totals)
        report.attribute_scores.emplace_back(
            attr, 100.0 * slot.first / static_cast<double>(slot.second));

    // Group means over member attributes' mean match rates.
    std::vector<std::pair<std::string, ValidationGroup>> memberships;
    for (const auto& [category, schema] : schemas) {
        for (const auto& spec : schema.attributes) {
            if (!spec.validation_group) continue;
            bool seen = std::any_of(memberships.begin(), memberships.end(),
                                    [&](const auto& kv) { return kv.first == spec.name; });
            if (!seen) memberships.emplace_back(spec.name, *spec.validation_group);
        }
    }
    for (ValidationGroup group : {ValidationGroup::Diversity, ValidationGroup::Accessibility,
                                  ValidationGroup::Content, ValidationGroup::Evaluation}) {
        double sum = 0.0;
        std::size_t n = 0;
        for (const auto& [attr, mean] : report.attribute_scores) {
            auto it = std::find_if(memberships.begin(), memberships.end(),
                                   [&attr = attr](const auto& kv) { return kv.first == attr; });
            if (it == memberships.end() || it->second != group) continue;
            sum += mean;
            ++n;
        }
        if (n > 0) report.group_scores.emplace_back(to_string(group), sum / static_cast<double>(n));
    }
    return report;
}

nlohmann::ordered_json report_to_json(const ScoreReport& report) {
    nlohmann::ordered_json out;
    out["papers"] = report.papers;
    out["precision"] = report.precision;
    out["recall"] = report.recall;
    out["weighted_f1"] = report.weighted_f1;
    nlohmann::ordered_json categories = nlohmann::ordered_json::array();
    for (const auto& row : report.categories)
        categories.push_back({{"category", to_string(row.category)},
                              {"papers", row.papers},
                              {"precision", row.precision},
                              {"recall", row.recall},
                              {"f1", row.f1}});
    out["categories"] = std::move(categories);
    nlohmann::ordered_json groups = nlohmann::ordered_json::object();
    for (const auto& [group, mean] : report.group_scores) groups[group] = mean;
    out["groups"] = std::move(groups);
    nlohmann::ordered_json attributes = nlohmann::ordered_json::object();
    for (const auto& [attr, mean] : report.attribute_scores) attributes[attr] = mean;
    out["attributes"] = std::move(attributes);
    return out;
}

namespace {

std::string fixed2(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << "|";
    for (const auto& cell : header) out << " " << cell << " |";
    out << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << "\n";
    for (const auto& row : rows) {
        out << "|";
        for (const auto& cell : row) out << " " << cell << " |";
        out << "\n";
    }
    return out.str();
}

} // namespace

std::string render_category_table(const std::vector<std::pair<std::string, ScoreReport>>& rows) {
    std::vector<Category> columns;
    for (Category c : {Category::ar, Category::en, Category::fr, Category::jp, Category::ru,
                       Category::multi}) {
        for (const auto& [model, report] : rows) {
            bool present = std::any_of(report.categories.begin(), report.categories.end(),
                                       [c](const auto& row) { return row.category == c; });
            if (present) {
                columns.push_back(c);
                break;
            }
        }
    }

    std::vector<std::string> header{"Model"};
    for (Category c : columns) header.push_back(to_string(c));
    header.emplace_back("W.Avg");

    std::vector<std::vector<std::string>> body;
    for (const auto& [model, report] : rows) {
        std::vector<std::string> line{model};
        for (Category c : columns) {
            auto it = std::find_if(report.categories.begin(), report.categories.end(),
                                   [c](const auto& row) { return row.category == c; });
            line.push_back(it == report.categories.end() ? "-" : fixed2(it->f1));
        }
        line.push_back(fixed2(report.weighted_f1));
        body.push_back(std::move(line));
    }
    return render_table(header, body);
}

std::string render_group_table(const std::vector<std::pair<std::string, ScoreReport>>& rows) {
    std::vector<std::string> columns;
    for (const auto& [model, report] : rows)
        for (const auto& [group, mean] : report.group_scores)
            if (std::find(columns.begin(), columns.end(), group) == columns.end())
                columns.push_back(group);

    std::vector<std::string> header{"Model"};
    header.insert(header.end(), columns.begin(), columns.end());

    std::vector<std::vector<std::string>> body;
    for (const auto& [model, report] : rows) {
        std::vector<std::string> line{model};
        for (const auto& column : columns) {
            auto it = std::find_if(report.group_scores.begin(), report.group_scores.end(),
                                   [&](const auto& kv) { return kv.first == column; });
            line.push_back(it == report.group_scores.end() ? "-" : fixed2(it->second));
        }
        body.push_back(std::move(line));
    }
    return render_table(header, body);
}

} // namespace mole

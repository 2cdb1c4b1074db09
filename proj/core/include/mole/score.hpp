#pragma once

#include "mole/schema.hpp"
#include "mole/value.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mole {

/// Annotated ground truth for one paper. exists_in_paper marks attributes
/// whose value is actually stated in the paper (1) rather than sourced
/// elsewhere (0).
struct GoldRecord {
    Category category = Category::ar;
    std::string paper_id;
    std::optional<int> publication_year;
    MetadataRecord values;
    std::vector<std::pair<std::string, bool>> exists_in_paper;

    bool exists(std::string_view name) const;
};

/// Parses {"category", "paper_id", "publication_year"?, "metadata": {...},
/// "exists": {attr: 0|1}}. Values are typed through the schema validator;
/// clean gold yields no corrective actions.
GoldRecord parse_gold(std::string_view raw_text, const Schema& schema);

/// Binary flexible match: scalars compare after trim and case-fold (Year by
/// integer, Number within relative 1e-9, Url ignoring one trailing slash);
/// lists compare as case-folded sets and match when the symmetric
/// difference has at most one element; keyed record lists the same, with
/// records equal only when every key is present and every value matches.
double match_values(const AnswerValue& pred, const AnswerValue& gold, const AttributeSpec& spec);

struct PaperScore {
    Category category = Category::ar;
    std::string paper_id;
    std::optional<int> publication_year;
    /// Match score per attribute, schema order, every attribute included.
    std::vector<std::pair<std::string, double>> attribute_scores;
    double precision = 0.0; // in [0,100]
    double recall = 0.0;
    double f1 = 0.0;
};

/// Scores the grouped (validation_group-bearing) attributes: recall over
/// those marked exists-in-paper, precision over those the prediction
/// emitted (value differs from the attribute default), F1 as their harmonic
/// mean. Throws on a category mismatch.
PaperScore score_paper(const MetadataRecord& rec, const GoldRecord& gold, const Schema& schema);

/// Fraction of all schema attributes whose answer length sits inside
/// [answer_min, answer_max].
double length_adherence(const MetadataRecord& rec, const Schema& schema);

struct ScoreReport {
    struct CategoryRow {
        Category category = Category::ar;
        std::size_t papers = 0;
        double precision = 0.0;
        double recall = 0.0;
        double f1 = 0.0;
    };

    std::vector<CategoryRow> categories; // Category enum order
    std::size_t papers = 0;
    double precision = 0.0; // paper-weighted means
    double recall = 0.0;
    double weighted_f1 = 0.0;
    /// group name -> mean over the group's attributes of per-attribute
    /// mean match rates, in [0,100].
    std::vector<std::pair<std::string, double>> group_scores;
    /// attribute -> mean match rate over all papers scoring it, in [0,100].
    std::vector<std::pair<std::string, double>> attribute_scores;
};

struct AggregateFilters {
    /// Keep only papers published strictly after this year.
    std::optional<int> published_after;
};

/// Averages paper scores per category and overall (weighted by paper
/// count), plus validation-group and per-attribute tables. Group membership
/// comes from the per-category schemas. Throws when no papers remain.
ScoreReport aggregate_report(const std::vector<PaperScore>& scores,
                             const std::map<Category, Schema>& schemas,
                             const AggregateFilters& filters = {});

nlohmann::ordered_json report_to_json(const ScoreReport& report);

/// Model-per-row Markdown table: one column per category plus the weighted
/// average.
std::string render_category_table(const std::vector<std::pair<std::string, ScoreReport>>& rows);

/// Model-per-row Markdown table over validation groups.
std::string render_group_table(const std::vector<std::pair<std::string, ScoreReport>>& rows);

} // namespace mole

#include "cidsrank/rank.hpp"

#include <algorithm>
#include <filesystem>
#include <unordered_set>

#include <json.hpp>

namespace cidsrank {

const std::array<std::string, 6> kColumnLabels = {
    "Country", "Citable documents", "Citations", "Self Citations", "Cits per Doc", "H index",
};

RankingTable build_absolute_table(const std::vector<TeamMetrics>& rows) {
    if (rows.empty()) throw EmptyResultError("ranking table needs at least one row");
    RankingTable table;
    table.kind = TableKind::absolute;
    table.column_labels.assign(kColumnLabels.begin(), kColumnLabels.end());
    std::unordered_set<std::string_view> labels;
    for (const auto& metrics : rows) {
        if (!labels.insert(metrics.label).second) {
            throw DuplicateLabelError("duplicate row label '" + metrics.label + "'");
        }
        TableRow row;
        row.label = metrics.label;
        row.cells[kColCitableDocs] = metrics.citable_documents;
        row.cells[kColCitations] = metrics.citations;
        if (metrics.self_citations) {
            row.cells[kColSelfCitations] = *metrics.self_citations;
        } else {
            row.cells[kColSelfCitations] = std::monostate{};
        }
        row.cells[kColCitsPerDoc] = metrics.cits_per_doc;
        row.cells[kColHIndex] = metrics.h_index;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::int64_t percent_round(const Rational& numerator, const Rational& denominator) {
    if (denominator == Rational(0)) {
        throw UndefinedPercentError("percentage with a zero denominator");
    }
    return round_half_up(Rational(100) * numerator / denominator);
}

namespace {

std::int64_t int_cell(const Cell& cell) { return std::get<std::int64_t>(cell); }

// The Cits-per-Doc value a reader of the rendered table would take ratios
// of: the rounded integer (cids) or the two-decimal value (scimago).
Rational displayed_cits_per_doc(const Rational& exact, DisplayStyle style) {
    if (style == DisplayStyle::cids) return Rational(round_half_up(exact));
    return Rational(round_half_up(Rational(100) * exact), 100);
}

}  // namespace

RankingTable build_percentage_table(const RankingTable& table,
                                    std::string_view reference_label, DisplayStyle style,
                                    PercentBasis basis) {
    if (table.kind != TableKind::absolute) {
        throw UsageError("percentage tables derive from an absolute table");
    }
    const TableRow* reference = nullptr;
    for (const auto& row : table.rows) {
        if (row.label == reference_label) {
            reference = &row;
            break;
        }
    }
    if (reference == nullptr) {
        throw UnknownLabelError("reference row '" + std::string(reference_label) +
                                "' not found");
    }
    const auto reference_cpd = [&](const TableRow& row) {
        const auto& exact = std::get<Rational>(row.cells[kColCitsPerDoc]);
        return basis == PercentBasis::full ? exact : displayed_cits_per_doc(exact, style);
    };

    RankingTable out;
    out.kind = TableKind::percentage;
    out.column_labels = table.column_labels;
    out.reference_label = std::string(reference_label);
    for (const auto& row : table.rows) {
        TableRow percent_row;
        percent_row.label = row.label;
        for (std::size_t col : {kColCitableDocs, kColCitations, kColHIndex}) {
            percent_row.cells[col] = percent_round(Rational(int_cell(row.cells[col])),
                                                   Rational(int_cell(reference->cells[col])));
        }
        percent_row.cells[kColCitsPerDoc] =
            percent_round(reference_cpd(row), reference_cpd(*reference));
        // Self Citations is a within-row share, not a cross-row ratio: the
        // row's self-citations over its own citation total.
        if (std::holds_alternative<std::monostate>(row.cells[kColSelfCitations]) ||
            int_cell(row.cells[kColCitations]) == 0) {
            percent_row.cells[kColSelfCitations] = std::monostate{};
        } else {
            percent_row.cells[kColSelfCitations] =
                percent_round(Rational(int_cell(row.cells[kColSelfCitations])),
                              Rational(int_cell(row.cells[kColCitations])));
        }
        out.rows.push_back(std::move(percent_row));
    }
    return out;
}

namespace {

using nlohmann::json;

[[noreturn]] void fail_dataset(const std::filesystem::path& path, const std::string& message) {
    throw IntegrityError("reference dataset " + path.string() + ": " + message);
}

}  // namespace

ReferenceDataset load_reference_dataset(const std::filesystem::path& path) {
    std::string text;
    try {
        text = read_text_file(path);
    } catch (const DataError& e) {
        throw IntegrityError(e.what());
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error&) {
        fail_dataset(path, "malformed JSON");
    }
    if (!doc.is_object()) fail_dataset(path, "top level must be an object");
    ReferenceDataset dataset;
    if (const auto it = doc.find("name"); it != doc.end() && it->is_string()) {
        dataset.name = it->get<std::string>();
    } else {
        fail_dataset(path, "missing string field 'name'");
    }
    if (const auto it = doc.find("style"); it != doc.end() && it->is_string()) {
        const auto style = it->get<std::string>();
        if (style == "cids") {
            dataset.default_style = DisplayStyle::cids;
        } else if (style == "scimago") {
            dataset.default_style = DisplayStyle::scimago;
        } else {
            fail_dataset(path, "unknown style '" + style + "'");
        }
    } else {
        fail_dataset(path, "missing string field 'style'");
    }
    const auto rows_it = doc.find("rows");
    if (rows_it == doc.end() || !rows_it->is_array() || rows_it->empty()) {
        fail_dataset(path, "missing non-empty array field 'rows'");
    }
    std::unordered_set<std::string> labels;
    for (const auto& row_json : *rows_it) {
        if (!row_json.is_object()) fail_dataset(path, "row entries must be objects");
        TeamMetrics row;
        const auto get_count = [&](const char* key) {
            const auto it = row_json.find(key);
            if (it == row_json.end() || !it->is_number_integer()) {
                fail_dataset(path, std::string("row missing integer field '") + key + "'");
            }
            const auto value = it->get<std::int64_t>();
            if (value < 0) fail_dataset(path, std::string("negative '") + key + "'");
            return value;
        };
        const auto label_it = row_json.find("label");
        if (label_it == row_json.end() || !label_it->is_string()) {
            fail_dataset(path, "row missing string field 'label'");
        }
        row.label = label_it->get<std::string>();
        if (!labels.insert(row.label).second) {
            fail_dataset(path, "duplicate row label '" + row.label + "'");
        }
        row.citable_documents = get_count("citable_documents");
        row.citations = get_count("citations");
        if (const auto it = row_json.find("self_citations");
            it != row_json.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
                fail_dataset(path, "row field 'self_citations' must be a non-negative integer");
            }
            row.self_citations = it->get<std::int64_t>();
        }
        // Published Cits-per-Doc figures are carried verbatim; they are not
        // always citations / citable_documents (different document windows).
        if (const auto it = row_json.find("cits_per_doc"); it != row_json.end()) {
            if (it->is_number_integer()) {
                row.cits_per_doc = Rational(it->get<std::int64_t>());
            } else if (it->is_string()) {
                try {
                    row.cits_per_doc = rational_from_decimal(it->get<std::string>());
                } catch (const ParseError& e) {
                    fail_dataset(path, std::string("bad 'cits_per_doc': ") + e.what());
                }
            } else {
                fail_dataset(path, "row field 'cits_per_doc' must be a string or integer");
            }
        } else {
            row.cits_per_doc = row.citable_documents > 0
                                   ? Rational(row.citations, row.citable_documents)
                                   : Rational(0);
        }
        row.h_index = get_count("h_index");
        dataset.rows.push_back(std::move(row));
    }
    return dataset;
}

}  // namespace cidsrank

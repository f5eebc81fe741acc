#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cidsrank/metrics.hpp"
#include "cidsrank/rational.hpp"

namespace cidsrank {

enum class TableKind { absolute, percentage };

// How Cits per Doc is displayed: integers ("307") or two decimals ("20.45").
enum class DisplayStyle { cids, scimago };

// Which Cits-per-Doc values enter percentage ratios: the display-rounded
// ones (reproduces the published tables) or the exact rationals.
enum class PercentBasis { displayed, full };

// A table cell: monostate renders as "n/a" (undefined self-citations),
// integers cover counts and percents, Rational covers Cits per Doc.
using Cell = std::variant<std::monostate, std::int64_t, Rational>;

inline constexpr std::size_t kColCitableDocs = 0;
inline constexpr std::size_t kColCitations = 1;
inline constexpr std::size_t kColSelfCitations = 2;
inline constexpr std::size_t kColCitsPerDoc = 3;
inline constexpr std::size_t kColHIndex = 4;

extern const std::array<std::string, 6> kColumnLabels;

struct TableRow {
    std::string label;
    std::array<Cell, 5> cells;
};

struct RankingTable {
    TableKind kind = TableKind::absolute;
    std::vector<std::string> column_labels;
    std::vector<TableRow> rows;
    std::optional<std::string> reference_label;  // set iff kind == percentage
};

// Absolute table in the given row order. Requires at least one row and
// unique labels (DuplicateLabelError otherwise).
RankingTable build_absolute_table(const std::vector<TeamMetrics>& rows);

// Round-half-up of 100 * numerator / denominator. Throws
// UndefinedPercentError when the denominator is zero.
std::int64_t percent_round(const Rational& numerator, const Rational& denominator);

// Derives the percentage table: Citable documents, Citations, Cits per Doc
// and H index become percent_round(row, reference row); Self Citations
// becomes each row's self-citations as a share of its own citations (so the
// column is independent of the reference choice). The reference row shows
// 100 in the four reference-relative columns.
RankingTable build_percentage_table(const RankingTable& table,
                                    std::string_view reference_label,
                                    DisplayStyle style = DisplayStyle::cids,
                                    PercentBasis basis = PercentBasis::displayed);

// A table data file: TeamMetrics rows plus a default display style.
// Rows with an explicit "cits_per_doc" keep it verbatim (never recomputed);
// rows without one get citations / citable_documents.
struct ReferenceDataset {
    std::string name;
    DisplayStyle default_style = DisplayStyle::cids;
    std::vector<TeamMetrics> rows;
};

// Throws IntegrityError when the file is missing, malformed or violates
// row invariants.
ReferenceDataset load_reference_dataset(const std::filesystem::path& path);

}  // namespace cidsrank

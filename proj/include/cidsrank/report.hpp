#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "cidsrank/rank.hpp"

namespace cidsrank {

enum class OutputFormat { text, csv, markdown };

// Renders a ranking table. Fixed conventions, locale-independent:
//   - CSV header is exactly
//     "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index"
//   - style cids shows Cits per Doc as a round-half-up integer,
//     style scimago with exactly two decimals
//   - absolute integer columns get thousands separators in text/markdown,
//     never in CSV
//   - percentage cells get a trailing '%' in text/markdown, bare in CSV
//   - undefined self-citations render as "n/a" (text/markdown) or an empty
//     CSV field
std::string render_table(const RankingTable& table, OutputFormat format,
                         DisplayStyle style = DisplayStyle::cids);

// "1234567" -> "1,234,567".
std::string format_with_separators(std::int64_t value);

std::optional<OutputFormat> parse_output_format(std::string_view name);
std::optional<DisplayStyle> parse_display_style(std::string_view name);
std::optional<PercentBasis> parse_percent_basis(std::string_view name);
std::optional<CitableMode> parse_citable_mode(std::string_view name);

}  // namespace cidsrank

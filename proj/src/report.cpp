#include "cidsrank/report.hpp"

#include <algorithm>
#include <sstream>

namespace cidsrank {

std::string format_with_separators(std::int64_t value) {
    const bool negative = value < 0;
    std::string digits = std::to_string(negative ? -value : value);
    std::string out;
    out.reserve(digits.size() + digits.size() / 3 + 1);
    const std::size_t first_group = digits.size() % 3 == 0 ? 3 : digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i != 0 && (i + 3 - first_group) % 3 == 0) out += ',';
        out += digits[i];
    }
    return negative ? "-" + out : out;
}

namespace {

std::string render_cell(const Cell& cell, TableKind kind, OutputFormat format,
                        DisplayStyle style) {
    const bool plain = format == OutputFormat::csv;
    if (std::holds_alternative<std::monostate>(cell)) {
        return plain ? "" : "n/a";
    }
    if (const auto* exact = std::get_if<Rational>(&cell)) {
        // Only the absolute Cits-per-Doc column carries a rational.
        if (style == DisplayStyle::scimago) return format_two_decimals(*exact);
        const auto rounded = round_half_up(*exact);
        return plain ? std::to_string(rounded) : format_with_separators(rounded);
    }
    const auto value = std::get<std::int64_t>(cell);
    std::string text = plain ? std::to_string(value) : format_with_separators(value);
    if (kind == TableKind::percentage && !plain) text += '%';
    return text;
}

std::string render_csv(const RankingTable& table, DisplayStyle style) {
    std::ostringstream out;
    for (std::size_t i = 0; i < table.column_labels.size(); ++i) {
        if (i != 0) out << ',';
        out << table.column_labels[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.label;
        for (const auto& cell : row.cells) {
            out << ',' << render_cell(cell, table.kind, OutputFormat::csv, style);
        }
        out << '\n';
    }
    return std::move(out).str();
}

std::vector<std::vector<std::string>> render_grid(const RankingTable& table,
                                                  OutputFormat format, DisplayStyle style) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back(table.column_labels);
    for (const auto& row : table.rows) {
        std::vector<std::string> line;
        line.push_back(row.label);
        for (const auto& cell : row.cells) {
            line.push_back(render_cell(cell, table.kind, format, style));
        }
        grid.push_back(std::move(line));
    }
    return grid;
}

std::string render_text(const RankingTable& table, DisplayStyle style) {
    const auto grid = render_grid(table, OutputFormat::text, style);
    std::vector<std::size_t> widths(grid[0].size(), 0);
    for (const auto& line : grid) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            widths[i] = std::max(widths[i], line[i].size());
        }
    }
    std::ostringstream out;
    for (const auto& line : grid) {
        std::string rendered;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (i != 0) rendered += "  ";
            if (i == 0) {
                rendered += line[i];
                rendered.append(widths[i] - line[i].size(), ' ');
            } else {
                rendered.append(widths[i] - line[i].size(), ' ');
                rendered += line[i];
            }
        }
        while (!rendered.empty() && rendered.back() == ' ') rendered.pop_back();
        out << rendered << '\n';
    }
    return std::move(out).str();
}

std::string render_markdown(const RankingTable& table, DisplayStyle style) {
    const auto grid = render_grid(table, OutputFormat::markdown, style);
    std::ostringstream out;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        out << '|';
        for (const auto& cell : grid[r]) out << ' ' << cell << " |";
        out << '\n';
        if (r == 0) {
            out << "|";
            for (std::size_t i = 0; i < grid[0].size(); ++i) {
                out << (i == 0 ? " --- |" : " ---: |");
            }
            out << '\n';
        }
    }
    return std::move(out).str();
}

}  // namespace

std::string render_table(const RankingTable& table, OutputFormat format, DisplayStyle style) {
    switch (format) {
        case OutputFormat::csv:
            return render_csv(table, style);
        case OutputFormat::markdown:
            return render_markdown(table, style);
        case OutputFormat::text:
            break;
    }
    return render_text(table, style);
}

std::optional<OutputFormat> parse_output_format(std::string_view name) {
    if (name == "text") return OutputFormat::text;
    if (name == "csv") return OutputFormat::csv;
    if (name == "markdown" || name == "md") return OutputFormat::markdown;
    return std::nullopt;
}

std::optional<DisplayStyle> parse_display_style(std::string_view name) {
    if (name == "cids") return DisplayStyle::cids;
    if (name == "scimago") return DisplayStyle::scimago;
    return std::nullopt;
}

std::optional<PercentBasis> parse_percent_basis(std::string_view name) {
    if (name == "displayed") return PercentBasis::displayed;
    if (name == "full") return PercentBasis::full;
    return std::nullopt;
}

std::optional<CitableMode> parse_citable_mode(std::string_view name) {
    if (name == "all") return CitableMode::all;
    if (name == "cited-only" || name == "cited_only") return CitableMode::cited_only;
    return std::nullopt;
}

}  // namespace cidsrank

#include <doctest.h>

#include "cidsrank/rank.hpp"
#include "cidsrank/report.hpp"
#include "test_util.hpp"

using namespace cidsrank;

namespace {

RankingTable shipped_table(const char* file) {
    const ReferenceDataset dataset = load_reference_dataset(testutil::data_dir() / file);
    return build_absolute_table(dataset.rows);
}

}  // namespace

TEST_CASE("format_with_separators groups digits by thousands") {
    CHECK(format_with_separators(0) == "0");
    CHECK(format_with_separators(7) == "7");
    CHECK(format_with_separators(999) == "999");
    CHECK(format_with_separators(1000) == "1,000");
    CHECK(format_with_separators(6877) == "6,877");
    CHECK(format_with_separators(243840) == "243,840");
    CHECK(format_with_separators(6672307) == "6,672,307");
    CHECK(format_with_separators(129540193) == "129,540,193");
    CHECK(format_with_separators(-1234567) == "-1,234,567");
}

TEST_CASE("CSV rendering is locale-free and separator-free") {
    const RankingTable table = shipped_table("cids_2013.json");
    CHECK(render_table(table, OutputFormat::csv) ==
          "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index\n"
          "USA,6877,2108797,93803,307,99\n"
          "China,5979,243840,27431,41,38\n"
          "UK,6355,1145060,91260,180,87\n");

    const RankingTable percent = build_percentage_table(table, "USA");
    CHECK(render_table(percent, OutputFormat::csv) ==
          "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index\n"
          "USA,100,100,4,100,100\n"
          "China,87,12,11,13,38\n"
          "UK,92,54,8,59,88\n");
}

TEST_CASE("text rendering aligns columns and keeps two-decimal quotients") {
    const RankingTable table = shipped_table("scimago_1996_2007.json");
    CHECK(render_table(table, OutputFormat::text, DisplayStyle::scimago) ==
          "Country  Citable documents    Citations  Self Citations  Cits per Doc  H index\n"
          "USA              6,672,307  129,540,193      62,480,425         20.45    1,380\n"
          "China            2,655,272   11,253,119       6,127,507          6.17      385\n"
          "UK               1,763,766   31,393,290       7,513,112         18.29      851\n");
}

TEST_CASE("text rendering of integer-style quotients and percent signs") {
    const RankingTable table = shipped_table("cids_2013.json");
    CHECK(render_table(table, OutputFormat::text, DisplayStyle::cids) ==
          "Country  Citable documents  Citations  Self Citations  Cits per Doc  H index\n"
          "USA                  6,877  2,108,797          93,803           307       99\n"
          "China                5,979    243,840          27,431            41       38\n"
          "UK                   6,355  1,145,060          91,260           180       87\n");

    const RankingTable percent = build_percentage_table(table, "USA");
    const std::string text = render_table(percent, OutputFormat::text);
    CHECK(text.find("100%") != std::string::npos);
    CHECK(text.find("4%") != std::string::npos);
    // no percent signs outside the percentage table
    CHECK(render_table(table, OutputFormat::text).find('%') == std::string::npos);
}

TEST_CASE("markdown rendering emits a right-aligned pipe table") {
    const RankingTable table = shipped_table("cids_2013.json");
    CHECK(render_table(table, OutputFormat::markdown, DisplayStyle::cids) ==
          "| Country | Citable documents | Citations | Self Citations | Cits per Doc | H index |\n"
          "| --- | ---: | ---: | ---: | ---: | ---: |\n"
          "| USA | 6,877 | 2,108,797 | 93,803 | 307 | 99 |\n"
          "| China | 5,979 | 243,840 | 27,431 | 41 | 38 |\n"
          "| UK | 6,355 | 1,145,060 | 91,260 | 180 | 87 |\n");
}

TEST_CASE("undefined self-citation cells render as n/a or an empty field") {
    TeamMetrics metrics;
    metrics.label = "Solo";
    metrics.citable_documents = 2;
    metrics.citations = 6;
    metrics.self_citations = std::nullopt;
    metrics.cits_per_doc = Rational(3);
    metrics.h_index = 2;
    const RankingTable table = build_absolute_table({metrics});

    CHECK(render_table(table, OutputFormat::csv) ==
          "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index\n"
          "Solo,2,6,,3,2\n");
    CHECK(render_table(table, OutputFormat::text) ==
          "Country  Citable documents  Citations  Self Citations  Cits per Doc  H index\n"
          "Solo                     2          6             n/a             3        2\n");
    CHECK(render_table(table, OutputFormat::markdown).find("| n/a |") != std::string::npos);
}

TEST_CASE("two-decimal formatting pads and truncates correctly by rounding") {
    TeamMetrics metrics;
    metrics.label = "X";
    metrics.citable_documents = 200;
    metrics.citations = 1;
    metrics.self_citations = 0;
    metrics.cits_per_doc = Rational(1, 200);  // 0.005 -> 0.01
    metrics.h_index = 1;
    const RankingTable table = build_absolute_table({metrics});
    CHECK(render_table(table, OutputFormat::csv, DisplayStyle::scimago) ==
          "Country,Citable documents,Citations,Self Citations,Cits per Doc,H index\n"
          "X,200,1,0,0.01,1\n");
}

TEST_CASE("format and option name parsing") {
    CHECK(parse_output_format("text") == OutputFormat::text);
    CHECK(parse_output_format("csv") == OutputFormat::csv);
    CHECK(parse_output_format("markdown") == OutputFormat::markdown);
    CHECK(parse_output_format("md") == OutputFormat::markdown);
    CHECK_FALSE(parse_output_format("html").has_value());
    CHECK_FALSE(parse_output_format("CSV").has_value());

    CHECK(parse_display_style("cids") == DisplayStyle::cids);
    CHECK(parse_display_style("scimago") == DisplayStyle::scimago);
    CHECK_FALSE(parse_display_style("plain").has_value());

    CHECK(parse_percent_basis("displayed") == PercentBasis::displayed);
    CHECK(parse_percent_basis("full") == PercentBasis::full);
    CHECK_FALSE(parse_percent_basis("exact").has_value());

    CHECK(parse_citable_mode("all") == CitableMode::all);
    CHECK(parse_citable_mode("cited-only") == CitableMode::cited_only);
    CHECK(parse_citable_mode("cited_only") == CitableMode::cited_only);
    CHECK_FALSE(parse_citable_mode("everything").has_value());
}

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cidsrank/corpus.hpp"
#include "cidsrank/ingest.hpp"
#include "cidsrank/metrics.hpp"
#include "cidsrank/rank.hpp"
#include "cidsrank/report.hpp"
#include "cidsrank/select.hpp"

namespace {

using namespace cidsrank;

void print_warnings(const Warnings& warnings) {
    for (const auto& message : warnings) std::cerr << "warning: " << message << '\n';
}

std::string lowercase_ascii(std::string text) {
    for (char& c : text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return text;
}

// "mit.edu" -> "edu"; a bare label maps to itself.
std::string final_domain_label(const std::string& domain) {
    const auto dot = domain.rfind('.');
    return dot == std::string::npos ? domain : domain.substr(dot + 1);
}

std::string strip_leading_dot(std::string suffix) {
    if (suffix.starts_with('.')) suffix.erase(0, 1);
    return suffix;
}

OutputFormat require_format(const std::string& name) {
    const auto format = parse_output_format(name);
    if (!format) throw UsageError("unknown format '" + name + "'");
    return *format;
}

DisplayStyle require_style(const std::string& name) {
    const auto style = parse_display_style(name);
    if (!style) throw UsageError("unknown style '" + name + "'");
    return *style;
}

PercentBasis require_basis(const std::string& name) {
    const auto basis = parse_percent_basis(name);
    if (!basis) throw UsageError("unknown percent basis '" + name + "'");
    return *basis;
}

CitableMode require_mode(const std::string& name) {
    const auto mode = parse_citable_mode(name);
    if (!mode) throw UsageError("unknown citable-documents mode '" + name + "'");
    return *mode;
}

void emit(const std::string& text, const std::string& out_path) {
    std::cout << text;
    if (!out_path.empty()) write_text_file(out_path, text);
}

// Absolute and percentage tables as one document, format-appropriate
// headings (none for CSV, which stays machine-readable).
std::string render_table_pair(const RankingTable& absolute, const RankingTable& percentage,
                              OutputFormat format, DisplayStyle style) {
    const std::string reference = percentage.reference_label.value_or("");
    std::string out;
    switch (format) {
        case OutputFormat::csv:
            out = render_table(absolute, format, style) + "\n" +
                  render_table(percentage, format, style);
            break;
        case OutputFormat::markdown:
            out = "### Absolute values\n\n" + render_table(absolute, format, style) +
                  "\n### Percentage of reference (" + reference + ")\n\n" +
                  render_table(percentage, format, style);
            break;
        case OutputFormat::text:
            out = "Absolute values\n" + render_table(absolute, format, style) +
                  "\nPercentage of reference (" + reference + ")\n" +
                  render_table(percentage, format, style);
            break;
    }
    return out;
}

struct IngestArgs {
    std::vector<std::string> search_inputs;
    std::vector<std::string> profile_inputs;
    std::string out_path;
    std::string generated_at;
    std::string cache_dir;
    bool from_cache = false;
    bool strict = false;
};

// Strict mode upgrades a would-be warning to a hard error.
void report_or_throw(const std::string& message, bool strict) {
    if (strict) throw DataError(message);
    std::cerr << "warning: " << message << '\n';
}

int cmd_ingest(const IngestArgs& args) {
    SystemClock clock;
    std::optional<Fetcher> fetcher;
    if (args.from_cache) {
        if (args.cache_dir.empty()) {
            throw UsageError("--from-cache requires --cache-dir (or CIDSRANK_CACHE_DIR)");
        }
        FetchPolicy policy;
        policy.cache_dir = args.cache_dir;
        fetcher.emplace(policy);
    }
    const auto read_input = [&](const std::string& input) {
        return fetcher ? fetcher->fetch(input) : read_text_file(input);
    };

    // Search pages concatenate into one ranking, in the order given, as if
    // paginated: ranks continue across pages.
    std::vector<ProfileStub> stubs;
    for (const auto& input : args.search_inputs) {
        Warnings warnings;
        std::vector<ProfileStub> page;
        try {
            page = parse_author_search_page(read_input(input), &warnings);
        } catch (const DataError& e) {
            throw DataError(input + ": " + e.what());
        }
        print_warnings(warnings);
        const int offset = static_cast<int>(stubs.size());
        for (auto& stub : page) {
            stub.search_rank += offset;
            stubs.push_back(std::move(stub));
        }
    }

    std::map<std::string, ResearcherProfile> documents;
    for (const auto& input : args.profile_inputs) {
        Warnings warnings;
        ResearcherProfile profile;
        try {
            profile = parse_profile_document(read_input(input), &warnings);
        } catch (const FetchError&) {
            throw;
        } catch (const DataError& e) {
            report_or_throw(input + ": " + e.what() + "; profile skipped", args.strict);
            continue;
        }
        print_warnings(warnings);
        const std::string id = profile.profile_id;
        if (!documents.emplace(id, std::move(profile)).second) {
            report_or_throw(input + ": duplicate profile document for '" + id +
                                "'; keeping the first",
                            args.strict);
        }
    }

    std::vector<ResearcherProfile> profiles;
    for (const auto& stub : stubs) {
        const auto it = documents.find(stub.profile_id);
        if (it == documents.end()) {
            report_or_throw("no profile document for '" + stub.profile_id + "' ('" +
                                stub.display_name + "'); profile dropped",
                            args.strict);
            continue;
        }
        ResearcherProfile profile = std::move(it->second);
        documents.erase(it);
        // The search page is the identity authority for name and domain.
        if (profile.display_name != stub.display_name ||
            profile.email_domain != stub.email_domain) {
            std::cerr << "warning: profile '" << stub.profile_id
                      << "': document identity differs from search entry; search entry kept\n";
        }
        profile.display_name = stub.display_name;
        profile.email_domain = stub.email_domain;
        profile.search_rank = stub.search_rank;
        profiles.push_back(std::move(profile));
    }
    for (const auto& [id, unused] : documents) {
        (void)unused;
        report_or_throw("profile document '" + id + "' matches no search entry; ignored",
                        args.strict);
    }

    const std::string generated_at =
        args.generated_at.empty() ? clock.utc_timestamp() : args.generated_at;
    const Corpus corpus(std::move(profiles), generated_at);
    save_corpus(corpus, args.out_path);

    std::map<std::string, int> counts;
    for (const auto& profile : corpus.profiles()) {
        ++counts[final_domain_label(profile.email_domain)];
    }
    for (const auto& [label, count] : counts) {
        std::cout << label << ": " << count << '\n';
    }
    std::cout << corpus.profiles().size() << " profiles written to " << args.out_path << '\n';
    return 0;
}

struct AnalyzeArgs {
    std::string corpus_path;
    std::vector<std::string> suffixes;
    std::vector<std::string> labels;
    int k = 30;
    std::string mode = "all";
    std::string reference;
    std::string format = "text";
    std::string style = "cids";
    std::string basis = "displayed";
    std::string out_path;
    bool raw_suffix = false;
    bool strict = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
    const OutputFormat format = require_format(args.format);
    const DisplayStyle style = require_style(args.style);
    const PercentBasis basis = require_basis(args.basis);
    const CitableMode mode = require_mode(args.mode);
    if (!args.labels.empty() && args.labels.size() != args.suffixes.size()) {
        throw UsageError("--label count must match --suffix count");
    }

    Warnings warnings;
    const Corpus corpus = load_corpus(args.corpus_path, {.strict = args.strict}, &warnings);
    print_warnings(warnings);

    std::vector<ProfileStub> stubs;
    stubs.reserve(corpus.profiles().size());
    for (const auto& profile : corpus.profiles()) stubs.push_back(stub_of(profile));
    std::stable_sort(stubs.begin(), stubs.end(),
                     [](const ProfileStub& a, const ProfileStub& b) {
                         return a.search_rank < b.search_rank;
                     });

    const SuffixMatch match_mode = args.raw_suffix ? SuffixMatch::raw : SuffixMatch::label;
    std::vector<Team> teams;
    for (std::size_t i = 0; i < args.suffixes.size(); ++i) {
        const std::string suffix = lowercase_ascii(args.suffixes[i]);
        const std::string label =
            args.labels.empty() ? strip_leading_dot(suffix) : args.labels[i];
        const auto filtered = filter_by_email_suffix(stubs, suffix, match_mode);
        if (filtered.empty()) {
            throw DataError("no profiles match suffix '" + suffix + "'");
        }
        auto roster = select_top_k(filtered, args.k);
        if (roster.short_roster) {
            std::cerr << "warning: suffix '" << suffix << "': only " << roster.members.size()
                      << " of " << args.k << " requested profiles available\n";
        }
        teams.push_back(make_team(label,
                                  args.raw_suffix ? suffix : strip_leading_dot(suffix),
                                  std::move(roster.members), args.k, roster.short_roster));
    }

    std::vector<TeamMetrics> rows(teams.size());
    if (teams.size() > 1) {
        std::vector<std::future<TeamMetrics>> futures;
        futures.reserve(teams.size());
        for (const auto& team : teams) {
            futures.push_back(std::async(std::launch::async, [&team, &corpus, mode] {
                return compute_team_metrics(team, corpus, mode);
            }));
        }
        for (std::size_t i = 0; i < futures.size(); ++i) rows[i] = futures[i].get();
    } else {
        rows[0] = compute_team_metrics(teams[0], corpus, mode);
    }

    const RankingTable absolute = build_absolute_table(rows);
    const std::string reference =
        args.reference.empty() ? absolute.rows.front().label : args.reference;
    if (std::none_of(absolute.rows.begin(), absolute.rows.end(),
                     [&reference](const TableRow& row) { return row.label == reference; })) {
        throw UsageError("reference '" + reference + "' is not one of the analyzed teams");
    }
    const RankingTable percentage = build_percentage_table(absolute, reference, style, basis);
    emit(render_table_pair(absolute, percentage, format, style), args.out_path);
    return 0;
}

struct ReferenceTablesArgs {
    std::string dataset;
    std::string data_dir = "data";
    std::string reference;
    std::string format = "text";
    std::string style;
    std::string basis = "displayed";
    std::string out_path;
};

int cmd_reference_tables(const ReferenceTablesArgs& args) {
    const OutputFormat format = require_format(args.format);
    const PercentBasis basis = require_basis(args.basis);
    std::filesystem::path path(args.data_dir);
    if (args.dataset == "scimago") {
        path /= "scimago_1996_2007.json";
    } else if (args.dataset == "cids") {
        path /= "cids_2013.json";
    } else {
        throw UsageError("unknown dataset '" + args.dataset + "' (expected scimago or cids)");
    }
    const ReferenceDataset dataset = load_reference_dataset(path);
    const DisplayStyle style =
        args.style.empty() ? dataset.default_style : require_style(args.style);
    const RankingTable absolute = build_absolute_table(dataset.rows);
    const std::string reference =
        args.reference.empty() ? absolute.rows.front().label : args.reference;
    if (std::none_of(absolute.rows.begin(), absolute.rows.end(),
                     [&reference](const TableRow& row) { return row.label == reference; })) {
        throw UsageError("reference '" + reference + "' is not a row of " + path.string());
    }
    const RankingTable percentage = build_percentage_table(absolute, reference, style, basis);
    emit(render_table_pair(absolute, percentage, format, style), args.out_path);
    return 0;
}

struct RenderArgs {
    std::string input_path;
    std::string reference;
    std::string format = "text";
    std::string style;
    std::string basis = "displayed";
    std::string out_path;
    bool percent = false;
};

int cmd_render(const RenderArgs& args) {
    const OutputFormat format = require_format(args.format);
    const PercentBasis basis = require_basis(args.basis);
    const ReferenceDataset dataset = load_reference_dataset(args.input_path);
    const DisplayStyle style =
        args.style.empty() ? dataset.default_style : require_style(args.style);
    RankingTable table = build_absolute_table(dataset.rows);
    if (args.percent) {
        const std::string reference =
            args.reference.empty() ? table.rows.front().label : args.reference;
        table = build_percentage_table(table, reference, style, basis);
    } else if (!args.reference.empty()) {
        throw UsageError("--reference requires --percent");
    }
    emit(render_table(table, format, style), args.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Team bibliometrics: suffix-selected researcher rankings"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value, [section] per subcommand)");

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand(
        "ingest", "Parse search and profile fixtures into a corpus file");
    ingest->add_option("--search", ingest_args.search_inputs,
                       "Author-search page (repeatable; ranks continue across pages)")
        ->required();
    ingest->add_option("--profile", ingest_args.profile_inputs,
                       "Profile page (repeatable)")
        ->required();
    ingest->add_option("--out", ingest_args.out_path, "Corpus file to write")->required();
    ingest->add_option("--generated-at", ingest_args.generated_at,
                       "Timestamp to record instead of the current time");
    ingest->add_option("--cache-dir", ingest_args.cache_dir, "Document cache directory")
        ->envname("CIDSRANK_CACHE_DIR");
    ingest->add_flag("--from-cache", ingest_args.from_cache,
                     "Treat --search/--profile values as cache keys, not paths");
    ingest->add_flag("--strict", ingest_args.strict, "Turn ingest warnings into errors");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand(
        "analyze", "Select teams by email suffix and rank their metrics");
    analyze->add_option("--corpus", analyze_args.corpus_path, "Corpus file")->required();
    analyze->add_option("--suffix", analyze_args.suffixes,
                        "Email suffix, e.g. edu or .ac.uk (repeatable)")
        ->required();
    analyze->add_option("--label", analyze_args.labels,
                        "Row label per suffix (repeatable, same order)");
    analyze->add_option("--k", analyze_args.k, "Team size")->check(CLI::PositiveNumber);
    analyze->add_option("--mode", analyze_args.mode, "Citable documents: all|cited-only");
    analyze->add_option("--reference", analyze_args.reference,
                        "Reference row label (default: first team)");
    analyze->add_option("--format", analyze_args.format, "text|csv|markdown");
    analyze->add_option("--style", analyze_args.style, "cids|scimago");
    analyze->add_option("--basis", analyze_args.basis,
                        "Cits-per-Doc percentage basis: displayed|full");
    analyze->add_option("--out", analyze_args.out_path, "Also write the report here");
    analyze->add_flag("--raw-suffix", analyze_args.raw_suffix,
                      "Literal string suffix match instead of label-aware");
    analyze->add_flag("--strict", analyze_args.strict, "Reject unknown corpus fields");

    ReferenceTablesArgs reference_args;
    auto* reference_tables = app.add_subcommand(
        "reference-tables", "Render a shipped reference dataset and its percentage table");
    reference_tables->add_option("--dataset", reference_args.dataset, "scimago|cids")
        ->required();
    reference_tables->add_option("--data-dir", reference_args.data_dir,
                                 "Directory holding the reference data files");
    reference_tables->add_option("--reference", reference_args.reference,
                                 "Reference row label (default: first row)");
    reference_tables->add_option("--format", reference_args.format, "text|csv|markdown");
    reference_tables->add_option("--style", reference_args.style,
                                 "cids|scimago (default: per dataset)");
    reference_tables->add_option("--basis", reference_args.basis, "displayed|full");
    reference_tables->add_option("--out", reference_args.out_path,
                                 "Also write the report here");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "Render a table data file");
    render->add_option("--input", render_args.input_path, "Table data file")->required();
    render->add_flag("--percent", render_args.percent,
                     "Render the derived percentage table instead");
    render->add_option("--reference", render_args.reference,
                       "Reference row label (default: first row; needs --percent)");
    render->add_option("--format", render_args.format, "text|csv|markdown");
    render->add_option("--style", render_args.style, "cids|scimago (default: per file)");
    render->add_option("--basis", render_args.basis, "displayed|full");
    render->add_option("--out", render_args.out_path, "Also write the output here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (ingest->parsed()) return cmd_ingest(ingest_args);
        if (analyze->parsed()) return cmd_analyze(analyze_args);
        if (reference_tables->parsed()) return cmd_reference_tables(reference_args);
        if (render->parsed()) return cmd_render(render_args);
        throw UsageError("no subcommand given");
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const FetchError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

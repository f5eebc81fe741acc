#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cidsrank/errors.hpp"

namespace cidsrank {

using Warnings = std::vector<std::string>;

// Normalizes an author name to its matching key: lowercase
// "<lastname> <first-initial>", diacritics folded to ASCII base letters,
// last name = final whitespace-separated token after stripping edge
// punctuation, initial = first letter of the first token that has one.
// A two-token name whose second token is a single letter is treated as
// already normalized, which makes the function idempotent.
// Throws EmptyKeyError when the name contains no letters.
std::string normalize_author_name(std::string_view raw_name);

// Same rule, but yields nullopt instead of throwing.
std::optional<std::string> try_normalize_author_name(std::string_view raw_name);

struct Author {
    std::string raw_name;
    std::string match_key;  // empty only when raw_name has no letters

    bool operator==(const Author&) const = default;
};

// Builds an Author, leaving match_key empty for letterless names.
Author make_author(std::string raw_name);

struct Publication {
    std::string pub_id;
    std::string title;
    std::optional<int> year;
    std::vector<Author> authors;
    std::int64_t citation_count = 0;
    // Incoming citation edges. Present in synthetic corpora, absent in
    // scraped ones; when present its length equals citation_count.
    std::optional<std::vector<std::string>> citing_pub_ids;

    bool operator==(const Publication&) const = default;
};

struct ResearcherProfile {
    std::string profile_id;
    std::string display_name;
    std::string email_domain;  // lowercase, no '@'
    // 1-based position within one search-result set. Parsers that see a
    // profile document in isolation leave it 0; corpus construction
    // rejects unassigned ranks.
    int search_rank = 0;
    std::vector<Publication> publications;

    bool operator==(const ResearcherProfile&) const = default;
};

// The identity slice of a profile, as listed on a search page.
struct ProfileStub {
    std::string profile_id;
    std::string display_name;
    std::string email_domain;
    int search_rank = 0;

    bool operator==(const ProfileStub&) const = default;
};

ProfileStub stub_of(const ResearcherProfile& profile);

// Immutable, validated set of profiles plus a publication index.
// Safe for concurrent reads once constructed.
class Corpus {
public:
    // Validates every profile and publication invariant; throws
    // IntegrityError on the first violation. The same pub_id may appear
    // under several profiles (a co-authored paper listed by each author)
    // but only with an identical record; within one profile it is an error.
    Corpus(std::vector<ResearcherProfile> profiles, std::string generated_at);

    Corpus(Corpus&&) noexcept = default;
    Corpus& operator=(Corpus&&) noexcept = default;
    Corpus(const Corpus&) = delete;
    Corpus& operator=(const Corpus&) = delete;

    const std::vector<ResearcherProfile>& profiles() const { return profiles_; }
    const std::string& generated_at() const { return generated_at_; }

    // Index lookups; nullptr when absent. For a pub_id listed by several
    // profiles this returns the first occurrence.
    const ResearcherProfile* find_profile(std::string_view profile_id) const;
    const Publication* find_publication(std::string_view pub_id) const;

private:
    std::vector<ResearcherProfile> profiles_;
    std::string generated_at_;
    std::unordered_map<std::string_view, const ResearcherProfile*> profile_index_;
    std::unordered_map<std::string_view, const Publication*> pub_index_;
};

struct LoadOptions {
    // Reject unknown fields instead of warning.
    bool strict = false;
};

// Parses and validates a corpus document. Parse failures name the line or
// field; integrity failures name the offending record. No partially valid
// corpus is ever returned.
Corpus parse_corpus_json(std::string_view text, const LoadOptions& options = {},
                         Warnings* warnings = nullptr);

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options = {},
                   Warnings* warnings = nullptr);

// Canonical serialization: fixed field order, two-space indent, UTF-8,
// trailing newline. load followed by serialize is byte-identical for
// canonically formatted input.
std::string serialize_corpus(const Corpus& corpus);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// A suffix-selected roster. members are ascending by search_rank, each
// email_domain ends with the suffix, and members.size() <= k.
struct Team {
    std::string label;
    std::string suffix;
    std::vector<ProfileStub> members;
    int k = 0;
    bool short_roster = false;  // fewer than k candidates were available
};

// Validates the Team invariants; throws IntegrityError.
Team make_team(std::string label, std::string suffix, std::vector<ProfileStub> members,
               int k, bool short_roster = false);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cidsrank

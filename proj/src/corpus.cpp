#include "cidsrank/corpus.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "latin_fold.hpp"
#include "utf8_util.hpp"

namespace cidsrank {

namespace {

using detail::append_utf8;
using detail::decode_utf8;

const char* fold_lookup(char32_t cp) {
    const auto* begin = std::begin(detail::kLatinFoldTable);
    const auto* end = std::end(detail::kLatinFoldTable);
    const auto* it = std::lower_bound(begin, end, cp,
                                      [](const detail::FoldEntry& e, char32_t v) { return e.cp < v; });
    if (it != end && it->cp == cp) return it->ascii;
    return nullptr;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case ' ':
        case '\t':
        case '\n':
        case '\r':
        case '\f':
        case '\v':
        case 0x00A0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_ascii_alnum(unsigned char b) {
    return (b >= 'a' && b <= 'z') || (b >= 'A' && b <= 'Z') || (b >= '0' && b <= '9');
}

void strip_edge_punctuation(std::string& token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end) {
        const auto b = static_cast<unsigned char>(token[begin]);
        if (b >= 0x80 || is_ascii_alnum(b)) break;
        ++begin;
    }
    while (end > begin) {
        const auto b = static_cast<unsigned char>(token[end - 1]);
        if (b >= 0x80 || is_ascii_alnum(b)) break;
        --end;
    }
    token = token.substr(begin, end - begin);
}

bool token_has_letter(std::string_view token) {
    for (char c : token) {
        const auto b = static_cast<unsigned char>(c);
        if ((b >= 'a' && b <= 'z') || b >= 0x80) return true;
    }
    return false;
}

std::size_t codepoint_count(std::string_view token) {
    std::size_t n = 0;
    for (char c : token) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

// The first lowercase ASCII letter, or the first non-ASCII code point.
std::string first_letter_unit(std::string_view token) {
    for (std::size_t i = 0; i < token.size();) {
        const auto b = static_cast<unsigned char>(token[i]);
        if (b >= 'a' && b <= 'z') return std::string(1, token[i]);
        if (b >= 0x80) {
            const auto [cp, len] = decode_utf8(token, i);
            (void)cp;
            return std::string(token.substr(i, static_cast<std::size_t>(len)));
        }
        ++i;
    }
    return {};
}

// Lowercases and folds the name into whitespace-separated tokens. ASCII
// letters are lowercased, table entries folded, other non-ASCII code points
// passed through (and treated as letters).
std::vector<std::string> fold_into_tokens(std::string_view raw) {
    std::vector<std::string> tokens;
    std::string current;
    const auto finish = [&] {
        strip_edge_punctuation(current);
        if (!current.empty()) tokens.push_back(current);
        current.clear();
    };
    for (std::size_t i = 0; i < raw.size();) {
        const auto [cp, len] = decode_utf8(raw, i);
        i += static_cast<std::size_t>(len);
        if (is_space_cp(cp)) {
            finish();
            continue;
        }
        if (cp == 0xFFFD) continue;  // undecodable bytes are dropped
        if (cp < 0x80) {
            auto c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            current += c;
        } else if (const char* folded = fold_lookup(cp)) {
            current += folded;
        } else {
            append_utf8(current, cp);
        }
    }
    finish();
    return tokens;
}

}  // namespace

std::optional<std::string> try_normalize_author_name(std::string_view raw_name) {
    const std::vector<std::string> tokens = fold_into_tokens(raw_name);
    if (tokens.empty()) return std::nullopt;
    if (std::none_of(tokens.begin(), tokens.end(),
                     [](const std::string& t) { return token_has_letter(t); })) {
        return std::nullopt;
    }
    // "couto f" is already a match key; keep it fixed.
    if (tokens.size() == 2 && token_has_letter(tokens[0]) && token_has_letter(tokens[1]) &&
        codepoint_count(tokens[1]) == 1) {
        return tokens[0] + ' ' + tokens[1];
    }
    std::string last_name;
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        if (token_has_letter(*it)) {
            last_name = *it;
            break;
        }
    }
    std::string initial;
    for (const auto& token : tokens) {
        if (token_has_letter(token)) {
            initial = first_letter_unit(token);
            break;
        }
    }
    return last_name + ' ' + initial;
}

std::string normalize_author_name(std::string_view raw_name) {
    auto key = try_normalize_author_name(raw_name);
    if (!key) {
        throw EmptyKeyError("author name has no letters: '" + std::string(raw_name) + "'");
    }
    return *std::move(key);
}

Author make_author(std::string raw_name) {
    Author author;
    author.match_key = try_normalize_author_name(raw_name).value_or("");
    author.raw_name = std::move(raw_name);
    return author;
}

ProfileStub stub_of(const ResearcherProfile& profile) {
    return {profile.profile_id, profile.display_name, profile.email_domain,
            profile.search_rank};
}

namespace {

void validate_email_domain(const std::string& domain, const std::string& who) {
    if (domain.empty()) {
        throw IntegrityError(who + ": empty email_domain");
    }
    for (char c : domain) {
        if (c == '@') throw IntegrityError(who + ": email_domain contains '@': '" + domain + "'");
        if (c >= 'A' && c <= 'Z') {
            throw IntegrityError(who + ": email_domain not lowercase: '" + domain + "'");
        }
    }
}

}  // namespace

Corpus::Corpus(std::vector<ResearcherProfile> profiles, std::string generated_at)
    : profiles_(std::move(profiles)), generated_at_(std::move(generated_at)) {
    for (const auto& profile : profiles_) {
        const std::string who = "profile '" + profile.profile_id + "'";
        if (profile.profile_id.empty()) throw IntegrityError("profile with empty profile_id");
        if (!profile_index_.emplace(profile.profile_id, &profile).second) {
            throw IntegrityError("duplicate profile_id '" + profile.profile_id + "'");
        }
        validate_email_domain(profile.email_domain, who);
        if (profile.search_rank < 1) {
            throw IntegrityError(who + ": search_rank must be >= 1, got " +
                                 std::to_string(profile.search_rank));
        }
        std::unordered_map<std::string_view, const Publication*> local;
        for (const auto& pub : profile.publications) {
            const std::string where = "publication '" + pub.pub_id + "' in " + who;
            if (pub.pub_id.empty()) throw IntegrityError(who + ": publication with empty pub_id");
            if (pub.citation_count < 0) {
                throw IntegrityError(where + ": negative citation_count");
            }
            if (pub.citing_pub_ids &&
                static_cast<std::int64_t>(pub.citing_pub_ids->size()) != pub.citation_count) {
                throw IntegrityError(where + ": citing_pub_ids has " +
                                     std::to_string(pub.citing_pub_ids->size()) +
                                     " entries but citation_count is " +
                                     std::to_string(pub.citation_count));
            }
            if (!local.emplace(pub.pub_id, &pub).second) {
                throw IntegrityError(who + ": duplicate pub_id '" + pub.pub_id + "'");
            }
            // A shared paper may be listed by several profiles, but only
            // with an identical record; the index keeps the first one.
            auto [it, inserted] = pub_index_.emplace(pub.pub_id, &pub);
            if (!inserted && !(*it->second == pub)) {
                throw IntegrityError("pub_id '" + pub.pub_id +
                                     "' appears with conflicting records, latest in " + who);
            }
        }
    }
}

const ResearcherProfile* Corpus::find_profile(std::string_view profile_id) const {
    const auto it = profile_index_.find(profile_id);
    return it == profile_index_.end() ? nullptr : it->second;
}

const Publication* Corpus::find_publication(std::string_view pub_id) const {
    const auto it = pub_index_.find(pub_id);
    return it == pub_index_.end() ? nullptr : it->second;
}

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail_parse(const std::string& context, const std::string& message) {
    throw ParseError(context + ": " + message);
}

void warn(Warnings* warnings, std::string message) {
    if (warnings != nullptr) warnings->push_back(std::move(message));
}

const json& require_field(const json& obj, const char* key, const std::string& context) {
    const auto it = obj.find(key);
    if (it == obj.end()) fail_parse(context, std::string("missing field '") + key + "'");
    return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_string()) fail_parse(context + "." + key, "expected a string");
    return value.get<std::string>();
}

std::int64_t get_int(const json& obj, const char* key, const std::string& context) {
    const json& value = require_field(obj, key, context);
    if (!value.is_number_integer()) fail_parse(context + "." + key, "expected an integer");
    return value.get<std::int64_t>();
}

void check_fields(const json& obj, std::initializer_list<const char*> allowed,
                  const std::string& context, bool strict, Warnings* warnings) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        const bool known =
            std::any_of(allowed.begin(), allowed.end(),
                        [&key](const char* k) { return key == k; });
        if (known) continue;
        if (strict) fail_parse(context, "unknown field '" + key + "'");
        warn(warnings, context + ": unknown field '" + key + "' ignored");
    }
}

Publication parse_publication(const json& obj, const std::string& context,
                              const LoadOptions& options, Warnings* warnings) {
    if (!obj.is_object()) fail_parse(context, "expected an object");
    check_fields(obj,
                 {"pub_id", "title", "year", "authors", "citation_count", "citing_pub_ids"},
                 context, options.strict, warnings);
    Publication pub;
    pub.pub_id = get_string(obj, "pub_id", context);
    if (pub.pub_id.empty()) fail_parse(context + ".pub_id", "must be non-empty");
    pub.title = get_string(obj, "title", context);
    if (const auto it = obj.find("year"); it != obj.end() && !it->is_null()) {
        if (!it->is_number_integer()) fail_parse(context + ".year", "expected an integer or null");
        pub.year = it->get<int>();
    }
    const json& authors = require_field(obj, "authors", context);
    if (!authors.is_array()) fail_parse(context + ".authors", "expected an array");
    for (std::size_t i = 0; i < authors.size(); ++i) {
        if (!authors[i].is_string()) {
            fail_parse(context + ".authors[" + std::to_string(i) + "]", "expected a string");
        }
        Author author = make_author(authors[i].get<std::string>());
        if (author.match_key.empty()) {
            warn(warnings, context + ".authors[" + std::to_string(i) + "]: name '" +
                               author.raw_name + "' has no letters; it will never match");
        }
        pub.authors.push_back(std::move(author));
    }
    pub.citation_count = get_int(obj, "citation_count", context);
    if (const auto it = obj.find("citing_pub_ids"); it != obj.end()) {
        if (!it->is_array()) fail_parse(context + ".citing_pub_ids", "expected an array");
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < it->size(); ++i) {
            if (!(*it)[i].is_string()) {
                fail_parse(context + ".citing_pub_ids[" + std::to_string(i) + "]",
                           "expected a string");
            }
            ids.push_back((*it)[i].get<std::string>());
        }
        pub.citing_pub_ids = std::move(ids);
    }
    return pub;
}

ResearcherProfile parse_profile(const json& obj, const std::string& context,
                                const LoadOptions& options, Warnings* warnings) {
    if (!obj.is_object()) fail_parse(context, "expected an object");
    check_fields(obj,
                 {"profile_id", "display_name", "email_domain", "search_rank", "publications"},
                 context, options.strict, warnings);
    ResearcherProfile profile;
    profile.profile_id = get_string(obj, "profile_id", context);
    if (profile.profile_id.empty()) fail_parse(context + ".profile_id", "must be non-empty");
    profile.display_name = get_string(obj, "display_name", context);
    profile.email_domain = get_string(obj, "email_domain", context);
    profile.search_rank = static_cast<int>(get_int(obj, "search_rank", context));
    const json& pubs = require_field(obj, "publications", context);
    if (!pubs.is_array()) fail_parse(context + ".publications", "expected an array");
    for (std::size_t i = 0; i < pubs.size(); ++i) {
        profile.publications.push_back(parse_publication(
            pubs[i], context + ".publications[" + std::to_string(i) + "]", options, warnings));
    }
    return profile;
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Corpus parse_corpus_json(std::string_view text, const LoadOptions& options,
                         Warnings* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("corpus: malformed JSON at line " + std::to_string(line) +
                         ", column " + std::to_string(column));
    }
    if (!doc.is_object()) throw ParseError("corpus: top level must be an object");
    check_fields(doc, {"profiles", "generated_at"}, "corpus", options.strict, warnings);
    std::string generated_at = get_string(doc, "generated_at", "corpus");
    const json& profiles_json = require_field(doc, "profiles", "corpus");
    if (!profiles_json.is_array()) throw ParseError("corpus.profiles: expected an array");
    std::vector<ResearcherProfile> profiles;
    profiles.reserve(profiles_json.size());
    for (std::size_t i = 0; i < profiles_json.size(); ++i) {
        profiles.push_back(parse_profile(profiles_json[i],
                                         "profiles[" + std::to_string(i) + "]", options,
                                         warnings));
    }
    return Corpus(std::move(profiles), std::move(generated_at));
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options,
                   Warnings* warnings) {
    return parse_corpus_json(read_text_file(path), options, warnings);
}

std::string serialize_corpus(const Corpus& corpus) {
    ordered_json doc;
    ordered_json profiles = ordered_json::array();
    for (const auto& profile : corpus.profiles()) {
        ordered_json p;
        p["profile_id"] = profile.profile_id;
        p["display_name"] = profile.display_name;
        p["email_domain"] = profile.email_domain;
        p["search_rank"] = profile.search_rank;
        ordered_json pubs = ordered_json::array();
        for (const auto& pub : profile.publications) {
            ordered_json q;
            q["pub_id"] = pub.pub_id;
            q["title"] = pub.title;
            if (pub.year) {
                q["year"] = *pub.year;
            } else {
                q["year"] = nullptr;
            }
            ordered_json authors = ordered_json::array();
            for (const auto& author : pub.authors) authors.push_back(author.raw_name);
            q["authors"] = std::move(authors);
            q["citation_count"] = pub.citation_count;
            if (pub.citing_pub_ids) {
                q["citing_pub_ids"] = *pub.citing_pub_ids;
            }
            pubs.push_back(std::move(q));
        }
        p["publications"] = std::move(pubs);
        profiles.push_back(std::move(p));
    }
    doc["profiles"] = std::move(profiles);
    doc["generated_at"] = corpus.generated_at();
    return doc.dump(2) + "\n";
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    write_text_file(path, serialize_corpus(corpus));
}

Team make_team(std::string label, std::string suffix, std::vector<ProfileStub> members,
               int k, bool short_roster) {
    if (k < 1) throw IntegrityError("team '" + label + "': k must be >= 1");
    if (static_cast<int>(members.size()) > k) {
        throw IntegrityError("team '" + label + "': " + std::to_string(members.size()) +
                             " members exceed k=" + std::to_string(k));
    }
    int previous_rank = 0;
    for (const auto& member : members) {
        if (!member.email_domain.ends_with(suffix)) {
            throw IntegrityError("team '" + label + "': member '" + member.profile_id +
                                 "' domain '" + member.email_domain +
                                 "' does not end with suffix '" + suffix + "'");
        }
        if (member.search_rank <= previous_rank) {
            throw IntegrityError("team '" + label + "': member '" + member.profile_id +
                                 "' breaks ascending search_rank order");
        }
        previous_rank = member.search_rank;
    }
    Team team;
    team.label = std::move(label);
    team.suffix = std::move(suffix);
    team.k = k;
    team.short_roster = short_roster || static_cast<int>(members.size()) < k;
    team.members = std::move(members);
    return team;
}

std::string read_text_file(const std::filesystem::path& path) {
    // an ifstream opens directories without complaint and then reads nothing
    std::error_code probe;
    if (!std::filesystem::is_regular_file(path, probe)) {
        throw DataError("not a readable file: " + path.string());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw DataError("error reading file: " + path.string());
    return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open file for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("error writing file: " + path.string());
}

}  // namespace cidsrank

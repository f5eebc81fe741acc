#include "cidsrank/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <ctime>
#include <thread>
#include <utility>

#include <json.hpp>
#include <openssl/evp.h>

#include "utf8_util.hpp"

namespace cidsrank {

namespace {

constexpr auto npos = std::string_view::npos;

void warn(Warnings* warnings, std::string message) {
    if (warnings != nullptr) warnings->push_back(std::move(message));
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    return text;
}

// The slice between the end of `prefix` and the next `terminator`, or
// nullopt when either is absent.
std::optional<std::string_view> find_between(std::string_view hay, std::string_view prefix,
                                             std::string_view terminator) {
    const auto start = hay.find(prefix);
    if (start == npos) return std::nullopt;
    const auto from = start + prefix.size();
    const auto end = hay.find(terminator, from);
    if (end == npos) return std::nullopt;
    return hay.substr(from, end - from);
}

std::string unescape_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        if (text[i] != '&') {
            out += text[i++];
            continue;
        }
        const auto semi = text.find(';', i);
        if (semi == npos || semi - i > 10) {
            out += text[i++];
            continue;
        }
        const std::string_view entity = text.substr(i + 1, semi - i - 1);
        if (entity == "amp") {
            out += '&';
        } else if (entity == "lt") {
            out += '<';
        } else if (entity == "gt") {
            out += '>';
        } else if (entity == "quot") {
            out += '"';
        } else if (entity == "apos") {
            out += '\'';
        } else if (entity.starts_with('#')) {
            char32_t cp = 0;
            bool ok = entity.size() > 1;
            if (entity.size() > 2 && (entity[1] == 'x' || entity[1] == 'X')) {
                for (std::size_t k = 2; k < entity.size(); ++k) {
                    const char c = entity[k];
                    if (c >= '0' && c <= '9') {
                        cp = cp * 16 + static_cast<char32_t>(c - '0');
                    } else if (c >= 'a' && c <= 'f') {
                        cp = cp * 16 + static_cast<char32_t>(c - 'a' + 10);
                    } else if (c >= 'A' && c <= 'F') {
                        cp = cp * 16 + static_cast<char32_t>(c - 'A' + 10);
                    } else {
                        ok = false;
                        break;
                    }
                }
            } else {
                for (std::size_t k = 1; k < entity.size(); ++k) {
                    const char c = entity[k];
                    if (c < '0' || c > '9') {
                        ok = false;
                        break;
                    }
                    cp = cp * 10 + static_cast<char32_t>(c - '0');
                }
            }
            if (!ok || cp == 0 || cp > 0x10FFFF) {
                out += text[i++];
                continue;
            }
            detail::append_utf8(out, cp);
        } else {
            out += text[i++];
            continue;
        }
        i = semi + 1;
    }
    return out;
}

std::string clean_text(std::string_view raw) {
    return std::string(trim(unescape_entities(trim(raw))));
}

std::string lowercase_ascii(std::string text) {
    for (char& c : text) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return text;
}

constexpr std::string_view kVerifiedEmailPrefix = "Verified email at ";

// "Verified email at mit.edu" -> "mit.edu"; nullopt when the line does not
// carry the expected prefix or the domain is empty.
std::optional<std::string> extract_email_domain(std::string_view line_text) {
    const std::string text = clean_text(line_text);
    if (!text.starts_with(kVerifiedEmailPrefix)) return std::nullopt;
    std::string domain =
        lowercase_ascii(std::string(trim(std::string_view(text).substr(kVerifiedEmailPrefix.size()))));
    if (domain.empty()) return std::nullopt;
    return domain;
}

bool all_ascii_digits(std::string_view text) {
    return !text.empty() && std::all_of(text.begin(), text.end(), [](char c) {
        return c >= '0' && c <= '9';
    });
}

// The text content of the first element with the given class attribute:
// skips to `class="<name>"`, then past the tag's '>', up to the next '<'.
std::optional<std::string_view> class_text(std::string_view hay, std::string_view class_attr) {
    const auto at = hay.find(class_attr);
    if (at == npos) return std::nullopt;
    const auto open = hay.find('>', at);
    if (open == npos) return std::nullopt;
    const auto close = hay.find('<', open + 1);
    if (close == npos) return std::nullopt;
    return hay.substr(open + 1, close - open - 1);
}

}  // namespace

std::vector<ProfileStub> parse_author_search_page(std::string_view document,
                                                  Warnings* warnings) {
    constexpr std::string_view kEntryMarker = "<div class=\"gs_ai\">";
    std::vector<ProfileStub> stubs;
    std::size_t pos = document.find(kEntryMarker);
    if (pos == npos) {
        if (document.find("id=\"gs_res_empty\"") == npos) {
            throw EmptyResultError(
                "search page has no author entries and no empty-results marker");
        }
        return stubs;
    }
    int entry_number = 0;
    while (pos != npos) {
        const auto next = document.find(kEntryMarker, pos + kEntryMarker.size());
        const std::string_view block =
            document.substr(pos, (next == npos ? document.size() : next) - pos);
        pos = next;
        ++entry_number;

        const auto user = find_between(block, "href=\"/citations?user=", "\"");
        if (!user || user->empty()) {
            warn(warnings, "search entry " + std::to_string(entry_number) +
                               ": no profile link; entry skipped");
            continue;
        }
        const auto after_href = block.substr(
            static_cast<std::size_t>(user->data() - block.data()) + user->size());
        const auto name_slice = find_between(after_href, ">", "</a>");
        const std::string name = name_slice ? clean_text(*name_slice) : std::string();
        if (name.empty()) {
            warn(warnings, "search entry " + std::to_string(entry_number) +
                               ": no display name; entry skipped");
            continue;
        }
        const auto email_slice = class_text(block, "class=\"gs_ai_eml\"");
        const auto domain = email_slice ? extract_email_domain(*email_slice) : std::nullopt;
        if (!domain) {
            warn(warnings, "search entry " + std::to_string(entry_number) + " ('" + name +
                               "'): no verified email; entry skipped");
            continue;
        }
        ProfileStub stub;
        stub.profile_id = std::string(*user);
        stub.display_name = name;
        stub.email_domain = *domain;
        stubs.push_back(std::move(stub));
    }
    for (std::size_t i = 0; i < stubs.size(); ++i) {
        stubs[i].search_rank = static_cast<int>(i) + 1;
    }
    return stubs;
}

ResearcherProfile parse_profile_document(std::string_view document, Warnings* warnings) {
    ResearcherProfile profile;

    const auto canonical = document.find("rel=\"canonical\"");
    if (canonical == npos) throw ParseError("profile document: no canonical link");
    const auto user =
        find_between(document.substr(canonical), "user=", "\"");
    if (!user || user->empty()) {
        throw ParseError("profile document: canonical link has no user id");
    }
    // The id may be followed by further query parameters.
    const auto amp = user->find('&');
    profile.profile_id = std::string(amp == npos ? *user : user->substr(0, amp));

    const auto name_slice = find_between(document, "<div id=\"gsc_prf_in\">", "</div>");
    if (!name_slice) throw ParseError("profile document: no display name");
    profile.display_name = clean_text(*name_slice);
    if (profile.display_name.empty()) {
        throw ParseError("profile document: empty display name");
    }

    const auto email_slice = find_between(document, "<div class=\"gsc_prf_il\">", "</div>");
    const auto domain = email_slice ? extract_email_domain(*email_slice) : std::nullopt;
    if (!domain) throw ParseError("profile document: no verified email line");
    profile.email_domain = *domain;

    constexpr std::string_view kRowMarker = "<tr class=\"gsc_a_tr\">";
    std::size_t pos = document.find(kRowMarker);
    const bool any_row = pos != npos;
    int row_number = 0;
    while (pos != npos) {
        const auto next = document.find(kRowMarker, pos + kRowMarker.size());
        const std::string_view row =
            document.substr(pos, (next == npos ? document.size() : next) - pos);
        pos = next;
        ++row_number;

        Publication pub;
        const auto cid = find_between(row, "data-cid=\"", "\"");
        const auto title_anchor = row.find("class=\"gsc_a_at\"");
        const auto title_slice = title_anchor == npos
                                     ? std::nullopt
                                     : find_between(row.substr(title_anchor), ">", "</a>");
        if (!cid || cid->empty() || !title_slice) {
            warn(warnings, "publication row " + std::to_string(row_number) +
                               ": no id or title; row skipped");
            continue;
        }
        pub.pub_id = std::string(*cid);
        pub.title = clean_text(*title_slice);

        if (const auto authors_slice = find_between(row, "<div class=\"gs_gray\">", "</div>")) {
            std::string_view rest = *authors_slice;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const auto piece = comma == npos ? rest : rest.substr(0, comma);
                rest = comma == npos ? std::string_view() : rest.substr(comma + 1);
                std::string author_name = clean_text(piece);
                if (!author_name.empty()) pub.authors.push_back(make_author(std::move(author_name)));
            }
        }

        if (const auto cited_slice = class_text(row, "class=\"gsc_a_ac\"")) {
            const std::string cited = clean_text(*cited_slice);
            if (cited.empty() || cited == "\xE2\x80\x94") {
                pub.citation_count = 0;  // a dash means never cited
            } else if (all_ascii_digits(cited)) {
                pub.citation_count = std::stoll(cited);
            } else {
                warn(warnings, "publication row " + std::to_string(row_number) + " ('" +
                                   pub.title + "'): unreadable cited-by value '" + cited +
                                   "'; row skipped");
                continue;
            }
        }

        if (const auto year_slice = class_text(row, "class=\"gsc_a_h\"")) {
            const std::string year = clean_text(*year_slice);
            if (all_ascii_digits(year) && year.size() <= 6) {
                pub.year = std::stoi(year);
            }
        }

        profile.publications.push_back(std::move(pub));
    }

    if (profile.publications.empty() && document.find("id=\"gsc_a_empty\"") == npos) {
        throw ParseError(any_row
                             ? "profile document: no publication row could be parsed"
                             : "profile document: no publication rows and no empty marker");
    }
    return profile;
}

std::chrono::milliseconds SystemClock::now() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now().time_since_epoch());
}

void SystemClock::sleep_for(std::chrono::milliseconds duration) {
    std::this_thread::sleep_for(duration);
}

std::string SystemClock::utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

Fetcher::Fetcher(FetchPolicy policy, Transport* transport, Clock* clock)
    : policy_(std::move(policy)), transport_(transport), clock_(clock) {
    if (clock_ == nullptr) clock_ = &system_clock_;
}

std::string Fetcher::cache_entry_name(std::string_view key) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(key.data(), key.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw FetchError("SHA-256 digest failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string name;
    name.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        name += kHex[digest[i] >> 4];
        name += kHex[digest[i] & 0x0F];
    }
    return name;
}

std::string Fetcher::fetch(const std::string& key) {
    const auto path = policy_.cache_dir / (cache_entry_name(key) + ".html");
    if (std::filesystem::exists(path)) {
        try {
            return read_text_file(path);
        } catch (const DataError& e) {
            throw FetchError(std::string("cache entry unreadable: ") + e.what());
        }
    }
    if (policy_.offline_only || transport_ == nullptr) {
        throw CacheMissError("no cached document for key '" + key + "' (offline mode)");
    }
    int failures = 0;
    for (;;) {
        wait_for_slot();
        try {
            std::string document = transport_->get(key);
            store(key, document);
            return document;
        } catch (const TransportError& e) {
            if (++failures > policy_.max_retries) {
                throw TransportError("fetch of '" + key + "' failed after " +
                                     std::to_string(failures) + " attempts: " + e.what());
            }
        }
    }
}

void Fetcher::store(const std::string& key, std::string_view document) {
    std::filesystem::create_directories(policy_.cache_dir);
    const auto base = cache_entry_name(key);
    write_text_file(policy_.cache_dir / (base + ".html"), document);
    nlohmann::ordered_json meta;
    meta["key"] = key;
    meta["retrieved_at"] = clock_->utc_timestamp();
    write_text_file(policy_.cache_dir / (base + ".meta"), meta.dump(2) + "\n");
}

void Fetcher::wait_for_slot() {
    if (last_request_ && policy_.min_interval.count() > 0) {
        const auto elapsed = clock_->now() - *last_request_;
        if (elapsed < policy_.min_interval) {
            clock_->sleep_for(policy_.min_interval - elapsed);
        }
    }
    last_request_ = clock_->now();
}

}  // namespace cidsrank

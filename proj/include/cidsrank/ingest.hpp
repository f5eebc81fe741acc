#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cidsrank/corpus.hpp"

namespace cidsrank {

// Parses an author-search page (the simplified page format described in
// docs/fixtures.md) into stubs, ordered by appearance with search_rank
// assigned 1..n. Entries without a verified-email line are skipped with a
// warning. A page with neither entries nor the empty-results marker raises
// EmptyResultError.
std::vector<ProfileStub> parse_author_search_page(std::string_view document,
                                                  Warnings* warnings = nullptr);

// Parses a profile page into a ResearcherProfile (search_rank left 0; ranks
// come from the search page). Unparseable publication rows are skipped with
// a warning; a page with zero parseable rows and no "no publications"
// marker raises ParseError. Missing cited-by values parse as 0.
ResearcherProfile parse_profile_document(std::string_view document,
                                         Warnings* warnings = nullptr);

struct FetchPolicy {
    std::chrono::milliseconds min_interval{0};
    int max_retries = 0;
    std::filesystem::path cache_dir;
    bool offline_only = true;
};

// Injected time source so rate limiting is testable.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::milliseconds now() = 0;
    virtual void sleep_for(std::chrono::milliseconds duration) = 0;
    virtual std::string utc_timestamp() = 0;  // ISO-8601, e.g. 2013-04-09T12:00:00Z
};

class SystemClock final : public Clock {
public:
    std::chrono::milliseconds now() override;
    void sleep_for(std::chrono::milliseconds duration) override;
    std::string utc_timestamp() override;
};

// Pluggable document source for live fetching. Throws TransportError on
// failure. The repo ships no network transport; parsing runs off fixtures.
class Transport {
public:
    virtual ~Transport() = default;
    virtual std::string get(const std::string& key) = 0;
};

// Cached, rate-limited document client. Cache layout:
// cache_dir/<sha256(key)>.html plus a <sha256(key)>.meta sidecar holding
// {"key": ..., "retrieved_at": ...}. A cache hit never touches the
// transport. Requests are serialized; consecutive transport calls are
// spaced at least min_interval apart.
class Fetcher {
public:
    explicit Fetcher(FetchPolicy policy, Transport* transport = nullptr,
                     Clock* clock = nullptr);

    // Cache hit -> cached bytes. Miss: CacheMissError in offline mode,
    // otherwise fetch through the transport (retrying up to max_retries,
    // FetchError after that) and write the cache before returning.
    std::string fetch(const std::string& key);

    // Seeds the cache entry for key.
    void store(const std::string& key, std::string_view document);

    // Base name of a cache entry: lowercase hex SHA-256 of the key.
    static std::string cache_entry_name(std::string_view key);

private:
    void wait_for_slot();

    FetchPolicy policy_;
    Transport* transport_;
    Clock* clock_;
    SystemClock system_clock_;
    std::optional<std::chrono::milliseconds> last_request_;
};

}  // namespace cidsrank

#include "cidsrank/select.hpp"

#include <algorithm>

namespace cidsrank {

bool domain_matches_suffix(std::string_view domain, std::string_view suffix,
                           SuffixMatch mode) {
    if (mode == SuffixMatch::raw) return domain.ends_with(suffix);
    // Label-aware: the suffix must line up with a dot boundary, so ".edu"
    // (or "edu") matches "mit.edu" and "edu" but not "educ.org".
    if (suffix.starts_with('.')) suffix.remove_prefix(1);
    if (domain == suffix) return true;
    return domain.size() > suffix.size() && domain.ends_with(suffix) &&
           domain[domain.size() - suffix.size() - 1] == '.';
}

std::vector<ProfileStub> filter_by_email_suffix(const std::vector<ProfileStub>& stubs,
                                                std::string_view suffix, SuffixMatch mode) {
    if (suffix.empty() || (mode == SuffixMatch::label && suffix == ".")) {
        throw UsageError("email suffix must be non-empty");
    }
    std::vector<ProfileStub> matched;
    for (const auto& stub : stubs) {
        if (domain_matches_suffix(stub.email_domain, suffix, mode)) {
            matched.push_back(stub);
        }
    }
    return matched;
}

Roster select_top_k(const std::vector<ProfileStub>& stubs, int k) {
    if (k < 1) throw UsageError("k must be >= 1, got " + std::to_string(k));
    Roster roster;
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), stubs.size());
    roster.members.assign(stubs.begin(), stubs.begin() + static_cast<std::ptrdiff_t>(take));
    roster.short_roster = stubs.size() < static_cast<std::size_t>(k);
    return roster;
}

}  // namespace cidsrank

#pragma once

#include <string_view>
#include <vector>

#include "cidsrank/corpus.hpp"

namespace cidsrank {

enum class SuffixMatch {
    // "edu" matches "mit.edu" and "edu" itself, never "educ.org".
    label,
    // Literal string suffix: "myedu" also matches "edu".
    raw,
};

// Keeps the stubs whose email_domain matches the suffix, order preserved.
// suffix must be non-empty and lowercase.
std::vector<ProfileStub> filter_by_email_suffix(const std::vector<ProfileStub>& stubs,
                                                std::string_view suffix,
                                                SuffixMatch mode = SuffixMatch::label);

bool domain_matches_suffix(std::string_view domain, std::string_view suffix,
                           SuffixMatch mode = SuffixMatch::label);

struct Roster {
    std::vector<ProfileStub> members;
    bool short_roster = false;  // fewer than k stubs were available
};

// First min(k, n) stubs of an already-filtered, rank-ordered list. k >= 1.
Roster select_top_k(const std::vector<ProfileStub>& stubs, int k);

}  // namespace cidsrank

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cidsrank/corpus.hpp"
#include "cidsrank/rational.hpp"

namespace cidsrank {

enum class CitableMode {
    all,         // every listed publication
    cited_only,  // publications with at least one citation
};

// One table row: the five metric columns for one team.
struct TeamMetrics {
    std::string label;
    std::int64_t citable_documents = 0;
    std::int64_t citations = 0;
    // Absent when any pooled publication lacks citation edge data.
    std::optional<std::int64_t> self_citations;
    Rational cits_per_doc{0};
    std::int64_t h_index = 0;
};

// Largest h such that at least h of the counts are >= h.
std::int64_t h_index(std::vector<std::int64_t> citation_counts);

// Union of the members' publications, deduplicated by pub_id in first-seen
// order. Throws MissingProfileError when a member is not in the corpus.
std::vector<const Publication*> pool_team_publications(const Team& team,
                                                       const Corpus& corpus);

std::int64_t count_citable_documents(const std::vector<const Publication*>& pooled,
                                     CitableMode mode);

std::int64_t count_citations(const std::vector<const Publication*>& pooled);

// True iff the two author lists share a normalized match key. Names without
// letters carry no key and never match.
bool is_self_citation(const std::vector<Author>& citing_authors,
                      const std::vector<Author>& cited_authors);

// Counts (citing, cited) pairs sharing an author, over every pooled
// publication and each of its citing_pub_ids entries. Returns nullopt when
// any pooled publication lacks citing_pub_ids. Throws DanglingEdgeError,
// listing the offending ids, when an edge resolves to no corpus publication.
std::optional<std::int64_t> count_self_citations(
    const std::vector<const Publication*>& pooled, const Corpus& corpus);

// Assembles all five columns. cits_per_doc is the exact rational
// citations / citable_documents (0 when there are no documents); the
// h-index is computed over the pooled, deduplicated publication counts.
TeamMetrics compute_team_metrics(const Team& team, const Corpus& corpus,
                                 CitableMode mode = CitableMode::all);

}  // namespace cidsrank

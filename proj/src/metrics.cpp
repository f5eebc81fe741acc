#include "cidsrank/metrics.hpp"

#include <algorithm>
#include <unordered_set>

namespace cidsrank {

std::int64_t h_index(std::vector<std::int64_t> citation_counts) {
    std::sort(citation_counts.begin(), citation_counts.end(), std::greater<>());
    std::int64_t h = 0;
    for (std::size_t i = 0; i < citation_counts.size(); ++i) {
        if (citation_counts[i] >= static_cast<std::int64_t>(i) + 1) {
            h = static_cast<std::int64_t>(i) + 1;
        } else {
            break;
        }
    }
    return h;
}

std::vector<const Publication*> pool_team_publications(const Team& team,
                                                       const Corpus& corpus) {
    std::vector<const Publication*> pooled;
    std::unordered_set<std::string_view> seen;
    for (const auto& member : team.members) {
        const ResearcherProfile* profile = corpus.find_profile(member.profile_id);
        if (profile == nullptr) {
            throw MissingProfileError("team '" + team.label + "': member '" +
                                      member.profile_id + "' not found in corpus");
        }
        for (const auto& pub : profile->publications) {
            if (seen.insert(pub.pub_id).second) pooled.push_back(&pub);
        }
    }
    return pooled;
}

std::int64_t count_citable_documents(const std::vector<const Publication*>& pooled,
                                     CitableMode mode) {
    if (mode == CitableMode::all) return static_cast<std::int64_t>(pooled.size());
    return std::count_if(pooled.begin(), pooled.end(),
                         [](const Publication* pub) { return pub->citation_count > 0; });
}

std::int64_t count_citations(const std::vector<const Publication*>& pooled) {
    std::int64_t total = 0;
    for (const Publication* pub : pooled) total += pub->citation_count;
    return total;
}

bool is_self_citation(const std::vector<Author>& citing_authors,
                      const std::vector<Author>& cited_authors) {
    std::unordered_set<std::string_view> keys;
    for (const auto& author : cited_authors) {
        if (!author.match_key.empty()) keys.insert(author.match_key);
    }
    return std::any_of(citing_authors.begin(), citing_authors.end(),
                       [&keys](const Author& author) {
                           return !author.match_key.empty() && keys.contains(author.match_key);
                       });
}

std::optional<std::int64_t> count_self_citations(
    const std::vector<const Publication*>& pooled, const Corpus& corpus) {
    for (const Publication* pub : pooled) {
        if (!pub->citing_pub_ids) return std::nullopt;
    }
    std::vector<std::string> dangling;
    std::int64_t count = 0;
    for (const Publication* pub : pooled) {
        for (const auto& citing_id : *pub->citing_pub_ids) {
            const Publication* citing = corpus.find_publication(citing_id);
            if (citing == nullptr) {
                dangling.push_back(citing_id);
                continue;
            }
            if (is_self_citation(citing->authors, pub->authors)) ++count;
        }
    }
    if (!dangling.empty()) {
        std::string joined;
        for (const auto& id : dangling) {
            if (!joined.empty()) joined += ", ";
            joined += '\'' + id + '\'';
        }
        throw DanglingEdgeError("citing_pub_ids reference unknown publications: " + joined);
    }
    return count;
}

TeamMetrics compute_team_metrics(const Team& team, const Corpus& corpus, CitableMode mode) {
    const auto pooled = pool_team_publications(team, corpus);
    TeamMetrics metrics;
    metrics.label = team.label;
    metrics.citable_documents = count_citable_documents(pooled, mode);
    metrics.citations = count_citations(pooled);
    metrics.self_citations = count_self_citations(pooled, corpus);
    metrics.cits_per_doc = metrics.citable_documents > 0
                               ? Rational(metrics.citations, metrics.citable_documents)
                               : Rational(0);
    std::vector<std::int64_t> counts;
    counts.reserve(pooled.size());
    for (const Publication* pub : pooled) counts.push_back(pub->citation_count);
    metrics.h_index = h_index(std::move(counts));
    return metrics;
}

}  // namespace cidsrank

#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "cidsrank/metrics.hpp"
#include "test_util.hpp"

using namespace cidsrank;

namespace {

// The definition, checked literally: try every candidate h.
std::int64_t h_index_brute_force(const std::vector<std::int64_t>& counts) {
    std::int64_t best = 0;
    for (std::int64_t h = 0; h <= static_cast<std::int64_t>(counts.size()); ++h) {
        const auto at_least_h = std::count_if(counts.begin(), counts.end(),
                                              [h](std::int64_t c) { return c >= h; });
        if (at_least_h >= h) best = h;
    }
    return best;
}

Publication pub_with(std::string id, std::vector<std::string> names, std::int64_t count,
                     std::optional<std::vector<std::string>> citing = std::nullopt) {
    Publication pub;
    pub.pub_id = std::move(id);
    pub.title = pub.pub_id;
    for (auto& name : names) pub.authors.push_back(make_author(std::move(name)));
    pub.citation_count = count;
    pub.citing_pub_ids = std::move(citing);
    return pub;
}

ResearcherProfile profile_with(std::string id, int rank, std::vector<Publication> pubs) {
    ResearcherProfile profile;
    profile.profile_id = std::move(id);
    profile.display_name = profile.profile_id;
    profile.email_domain = "mit.edu";
    profile.search_rank = rank;
    profile.publications = std::move(pubs);
    return profile;
}

Team team_of(const Corpus& corpus) {
    std::vector<ProfileStub> members;
    for (const auto& profile : corpus.profiles()) members.push_back(stub_of(profile));
    return make_team("USA", "edu", std::move(members),
                     static_cast<int>(corpus.profiles().size()));
}

}  // namespace

TEST_CASE("h_index on known inputs") {
    CHECK(h_index({}) == 0);
    CHECK(h_index({0}) == 0);
    CHECK(h_index({10, 8, 5, 4, 3}) == 4);
    CHECK(h_index({1, 1, 1, 1}) == 1);
    CHECK(h_index({5, 5, 5, 5, 5}) == 5);
    CHECK(h_index({100}) == 1);
    CHECK(h_index({3, 0, 6, 1, 5}) == 3);
    CHECK(h_index({2, 2}) == 2);
}

TEST_CASE("h_index equals the brute-force oracle on random multisets") {
    std::mt19937 rng(424243);
    std::uniform_int_distribution<int> size_dist(0, 50);
    std::uniform_int_distribution<std::int64_t> count_dist(0, 60);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::int64_t> counts(size_dist(rng));
        for (auto& c : counts) c = count_dist(rng);
        CAPTURE(trial);
        const auto h = h_index(counts);
        CHECK(h == h_index_brute_force(counts));
        CHECK(h <= static_cast<std::int64_t>(counts.size()));
        if (!counts.empty()) {
            CHECK(h <= *std::max_element(counts.begin(), counts.end()));
        }
    }
}

TEST_CASE("h_index never decreases when a publication or citation is added") {
    std::mt19937 rng(7171);
    std::uniform_int_distribution<std::int64_t> count_dist(0, 20);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::int64_t> counts(12);
        for (auto& c : counts) c = count_dist(rng);
        const auto base = h_index(counts);

        auto extended = counts;
        extended.push_back(count_dist(rng));
        CHECK(h_index(extended) >= base);

        auto bumped = counts;
        bumped[static_cast<std::size_t>(trial) % bumped.size()] += 1;
        CHECK(h_index(bumped) >= base);
    }
}

TEST_CASE("pool_team_publications deduplicates by pub_id") {
    std::vector<ResearcherProfile> profiles;
    profiles.push_back(profile_with("p1", 1,
                                    {pub_with("w1", {"A"}, 1), pub_with("w2", {"A"}, 2),
                                     pub_with("shared", {"A", "B"}, 3)}));
    profiles.push_back(profile_with("p2", 2,
                                    {pub_with("shared", {"A", "B"}, 3),
                                     pub_with("w3", {"B"}, 4)}));
    const Corpus corpus(std::move(profiles), "t");
    const auto pooled = pool_team_publications(team_of(corpus), corpus);
    REQUIRE(pooled.size() == 4);
    CHECK(pooled[0]->pub_id == "w1");
    CHECK(pooled[2]->pub_id == "shared");
    CHECK(pooled[3]->pub_id == "w3");
    CHECK(count_citations(pooled) == 1 + 2 + 3 + 4);

    SUBCASE("member missing from the corpus") {
        Team team = team_of(corpus);
        team.members.push_back({"ghost", "Ghost", "x.edu", 99});
        CHECK_THROWS_AS(pool_team_publications(team, corpus), MissingProfileError);
    }
}

TEST_CASE("count_citable_documents modes") {
    std::vector<Publication> owned = {pub_with("w1", {"A"}, 3), pub_with("w2", {"A"}, 0),
                                      pub_with("w3", {"A"}, 1), pub_with("w4", {"A"}, 0),
                                      pub_with("w5", {"A"}, 2)};
    std::vector<const Publication*> pooled;
    for (const auto& pub : owned) pooled.push_back(&pub);
    CHECK(count_citable_documents(pooled, CitableMode::all) == 5);
    CHECK(count_citable_documents(pooled, CitableMode::cited_only) == 3);
    CHECK(count_citable_documents({}, CitableMode::all) == 0);
    CHECK(count_citable_documents({}, CitableMode::cited_only) == 0);
    CHECK(count_citations(pooled) == 6);
    CHECK(count_citations({}) == 0);
}

TEST_CASE("is_self_citation matches on normalized keys") {
    const auto authors = [](std::vector<std::string> names) {
        std::vector<Author> list;
        for (auto& name : names) list.push_back(make_author(std::move(name)));
        return list;
    };
    CHECK(is_self_citation(authors({"couto f"}), authors({"couto f", "silva m"})));
    CHECK_FALSE(is_self_citation(authors({"couto f"}), authors({"silva m"})));
    CHECK(is_self_citation(authors({"Francisco M. Couto"}), authors({"Couto F"})));
    CHECK(is_self_citation(authors({"José Pérez"}), authors({"J. Pérez", "Wei Li"})));
    CHECK_FALSE(is_self_citation(authors({}), authors({"couto f"})));
    // letterless names carry no key and never match, not even each other
    CHECK_FALSE(is_self_citation(authors({"123"}), authors({"123"})));

    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::string> a, b;
        for (int i = 0; i < 4; ++i) {
            a.push_back("author " + std::to_string(rng() % 8));
            b.push_back("author " + std::to_string(rng() % 8));
        }
        CHECK(is_self_citation(authors(a), authors(b)) ==
              is_self_citation(authors(b), authors(a)));
    }
}

TEST_CASE("count_self_citations follows the edge data") {
    SUBCASE("direct example: one of two citing papers shares an author") {
        std::vector<ResearcherProfile> profiles;
        profiles.push_back(profile_with(
            "p1", 1, {pub_with("w1", {"couto f"}, 2, {{"c1", "c2"}})}));
        profiles.push_back(profile_with(
            "p2", 2, {pub_with("c1", {"couto f", "other x"}, 0, {std::vector<std::string>{}}),
                      pub_with("c2", {"someone else"}, 0, {std::vector<std::string>{}})}));
        const Corpus corpus(std::move(profiles), "t");

        Team team = make_team("USA", "edu", {stub_of(corpus.profiles()[0])}, 1);
        const auto pooled = pool_team_publications(team, corpus);
        CHECK(count_self_citations(pooled, corpus) == 1);
    }
    SUBCASE("undefined when any pooled publication lacks edges") {
        std::vector<ResearcherProfile> profiles;
        profiles.push_back(profile_with(
            "p1", 1, {pub_with("w1", {"A"}, 1, {{"w2"}}), pub_with("w2", {"B"}, 0)}));
        const Corpus corpus(std::move(profiles), "t");
        const auto pooled = pool_team_publications(team_of(corpus), corpus);
        CHECK(count_self_citations(pooled, corpus) == std::nullopt);
    }
    SUBCASE("dangling edge names the offending ids") {
        std::vector<ResearcherProfile> profiles;
        profiles.push_back(profile_with(
            "p1", 1, {pub_with("w1", {"A"}, 2, {{"missing_a", "missing_b"}})}));
        const Corpus corpus(std::move(profiles), "t");
        const auto pooled = pool_team_publications(team_of(corpus), corpus);
        try {
            count_self_citations(pooled, corpus);
            FAIL("expected DanglingEdgeError");
        } catch (const DanglingEdgeError& e) {
            const std::string what = e.what();
            CHECK(what.find("missing_a") != std::string::npos);
            CHECK(what.find("missing_b") != std::string::npos);
        }
    }
}

TEST_CASE("count_self_citations equals an exhaustive pair oracle on random corpora") {
    std::mt19937 rng(20130409);
    for (int trial = 0; trial < 30; ++trial) {
        // small synthetic corpus: one profile, n pubs, random author pool
        const int n_pubs = 4 + static_cast<int>(rng() % 12);
        std::vector<Publication> pubs;
        std::vector<std::vector<std::string>> ids_by_pub(static_cast<std::size_t>(n_pubs));
        for (int i = 0; i < n_pubs; ++i) {
            std::vector<std::string> names;
            const int n_authors = 1 + static_cast<int>(rng() % 3);
            for (int a = 0; a < n_authors; ++a) {
                names.push_back("author " + std::to_string(rng() % 6));
            }
            pubs.push_back(pub_with("w" + std::to_string(i), names, 0));
        }
        for (int i = 0; i < n_pubs; ++i) {
            const int n_edges = static_cast<int>(rng() % 8);
            std::vector<std::string> citing;
            for (int e = 0; e < n_edges; ++e) {
                int other = static_cast<int>(rng() % n_pubs);
                if (other == i) other = (other + 1) % n_pubs;
                citing.push_back("w" + std::to_string(other));
            }
            pubs[static_cast<std::size_t>(i)].citation_count =
                static_cast<std::int64_t>(citing.size());
            pubs[static_cast<std::size_t>(i)].citing_pub_ids = citing;
        }

        // oracle: walk every (cited, citing id) pair by hand
        std::int64_t expected = 0;
        for (const auto& cited : pubs) {
            for (const auto& citing_id : *cited.citing_pub_ids) {
                const auto& citing =
                    *std::find_if(pubs.begin(), pubs.end(), [&](const Publication& p) {
                        return p.pub_id == citing_id;
                    });
                bool shared = false;
                for (const auto& x : citing.authors) {
                    for (const auto& y : cited.authors) {
                        if (!x.match_key.empty() && x.match_key == y.match_key) {
                            shared = true;
                        }
                    }
                }
                if (shared) ++expected;
            }
        }

        std::vector<ResearcherProfile> profiles;
        profiles.push_back(profile_with("p1", 1, pubs));
        const Corpus corpus(std::move(profiles), "t");
        const auto pooled = pool_team_publications(team_of(corpus), corpus);
        CAPTURE(trial);
        CHECK(count_self_citations(pooled, corpus) == expected);
    }
}

TEST_CASE("compute_team_metrics assembles the five columns") {
    std::vector<ResearcherProfile> profiles;
    profiles.push_back(profile_with(
        "p1", 1,
        {pub_with("w1", {"Ana Souza", "Ben Katz"}, 3, {{"w2", "w3", "w4"}}),
         pub_with("w2", {"Ana Souza"}, 1, {{"w4"}})}));
    profiles.push_back(profile_with(
        "p2", 2,
        {pub_with("w3", {"Ben Katz"}, 1, {{"w1"}}),
         pub_with("w4", {"Cleo Vang"}, 0, {std::vector<std::string>{}}),
         pub_with("w1", {"Ana Souza", "Ben Katz"}, 3, {{"w2", "w3", "w4"}})}));
    const Corpus corpus(std::move(profiles), "t");
    const TeamMetrics metrics = compute_team_metrics(team_of(corpus), corpus);

    CHECK(metrics.label == "USA");
    CHECK(metrics.citable_documents == 4);  // w1 shared, counted once
    CHECK(metrics.citations == 5);
    // self-citations by hand: w1<-w2 (Souza), w1<-w3 (Katz), w2<-w4 no,
    // w3<-w1 (Katz), w4 none
    CHECK(metrics.self_citations == 3);
    CHECK(metrics.cits_per_doc == Rational(5, 4));
    CHECK(metrics.h_index == 1);
    CHECK(*metrics.self_citations <= metrics.citations);
    CHECK(metrics.h_index <= metrics.citable_documents);

    SUBCASE("cited_only mode shrinks the denominator") {
        const TeamMetrics cited =
            compute_team_metrics(team_of(corpus), corpus, CitableMode::cited_only);
        CHECK(cited.citable_documents == 3);
        CHECK(cited.cits_per_doc == Rational(5, 3));
    }
}

TEST_CASE("all-zero citation corpus yields zero metrics") {
    std::vector<ResearcherProfile> profiles;
    profiles.push_back(profile_with("p1", 1,
                                    {pub_with("w1", {"A"}, 0, {std::vector<std::string>{}}),
                                     pub_with("w2", {"B"}, 0, {std::vector<std::string>{}})}));
    const Corpus corpus(std::move(profiles), "t");
    const TeamMetrics metrics = compute_team_metrics(team_of(corpus), corpus);
    CHECK(metrics.citations == 0);
    CHECK(metrics.h_index == 0);
    CHECK(metrics.self_citations == 0);
    CHECK(metrics.cits_per_doc == Rational(0));
}

TEST_CASE("metrics on the shipped corpus are deterministic and consistent") {
    const Corpus corpus = load_corpus(testutil::fixtures_dir() / "three_countries.json");
    std::vector<ProfileStub> stubs;
    for (const auto& profile : corpus.profiles()) stubs.push_back(stub_of(profile));

    std::vector<ProfileStub> edu_members;
    for (const auto& stub : stubs) {
        if (stub.email_domain.ends_with(".edu")) edu_members.push_back(stub);
    }
    const Team team = make_team("edu", "edu", edu_members, 30);
    const TeamMetrics first = compute_team_metrics(team, corpus);
    const TeamMetrics second = compute_team_metrics(team, corpus);

    CHECK(first.citable_documents == second.citable_documents);
    CHECK(first.citations == second.citations);
    CHECK(first.self_citations == second.self_citations);
    CHECK(first.cits_per_doc == second.cits_per_doc);
    CHECK(first.h_index == second.h_index);

    REQUIRE(first.self_citations.has_value());
    CHECK(*first.self_citations <= first.citations);
    CHECK(first.h_index <= first.citable_documents);
    CHECK(first.cits_per_doc * first.citable_documents == Rational(first.citations));
}

#include <clubgood/congestion_index.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "oracles.hpp"

namespace clubgood {
namespace {

using Strings = std::vector<std::string>;

ProximityQuery paper_query(int window = 50) {
  return ProximityQuery::make(testing::group_a_terms(), testing::group_b_terms(), window);
}

CorpusDocument doc(std::string id, int year, std::string text,
                   std::optional<std::string> source = std::nullopt) {
  return {std::move(id), year, std::move(text), std::move(source)};
}

std::string filler(std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s += " x";
  return s;
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("Globalization causes CHAOS!"), (Strings{"globalization", "causes", "chaos"}));
  EXPECT_EQ(tokenize("free-trade"), (Strings{"free", "trade"}));
  EXPECT_EQ(tokenize(""), Strings{});
  EXPECT_EQ(tokenize("  --  "), Strings{});
  EXPECT_EQ(tokenize("it's K-12, 2024"), (Strings{"it", "s", "k", "12", "2024"}));
  EXPECT_EQ(tokenize("Zürich trade"), (Strings{"z\xc3\xbcrich", "trade"}));
}

TEST(FindTermPositions, Examples) {
  EXPECT_EQ(find_term_positions(Strings{"a", "free", "trade", "x"}, Term{"free", "trade"}),
            (std::vector<std::size_t>{1}));
  EXPECT_EQ(find_term_positions(Strings{"chaos", "chaos"}, Term{"chaos"}),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(find_term_positions(Strings{"a", "a", "a"}, Term{"a", "a"}),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(find_term_positions(Strings{"a"}, Term{"a", "b"}).empty());
}

TEST(ProximityQuery, Validation) {
  EXPECT_THROW(ProximityQuery::make({}, {"chaos"}), IndexError);
  EXPECT_THROW(ProximityQuery::make({"trade"}, {}), IndexError);
  EXPECT_THROW(ProximityQuery::make({"trade", "--"}, {"chaos"}), IndexError);
  EXPECT_THROW(ProximityQuery::make({"trade"}, {"chaos"}, 0), IndexError);
  const auto q = ProximityQuery::make({"Free-Trade"}, {"strain on"});
  EXPECT_EQ(q.window(), 50);
  EXPECT_EQ(q.group_a()[0], (Term{"free", "trade"}));
  EXPECT_EQ(q.group_b()[0], (Term{"strain", "on"}));
}

TEST(DocumentHit, InclusiveWindowBoundary) {
  const auto q = paper_query();
  // "globalization" at 0 and "chaos" at 50.
  EXPECT_TRUE(document_hit(doc("a", 2020, "globalization" + filler(49) + " chaos"), q));
  // ... and at 51.
  EXPECT_FALSE(document_hit(doc("b", 2020, "globalization" + filler(50) + " chaos"), q));
  // Order does not matter.
  EXPECT_TRUE(document_hit(doc("c", 2020, "chaos" + filler(49) + " immigration"), q));
  EXPECT_FALSE(document_hit(doc("d", 2020, "chaos" + filler(50) + " immigration"), q));
}

TEST(DocumentHit, OneSideAbsent) {
  const auto q = paper_query();
  EXPECT_FALSE(document_hit(doc("a", 2020, "A crisis, and the wards were overwhelmed."), q));
  EXPECT_FALSE(document_hit(doc("b", 2020, "Globalization and free trade."), q));
  EXPECT_FALSE(document_hit(doc("c", 2020, ""), q));
}

TEST(DocumentHit, PhrasesAndStemming) {
  const auto q = paper_query();
  EXPECT_TRUE(document_hit(doc("a", 2020, "Free-trade deals put a STRAIN ON ports."), q));
  EXPECT_FALSE(document_hit(doc("b", 2020, "Free markets, trade strain; the ports."), q));
  // No stemming: "overwhelm" is not "overwhelmed".
  EXPECT_FALSE(document_hit(doc("c", 2020, "immigration may overwhelm courts"), q));
  EXPECT_TRUE(document_hit(doc("d", 2020, "immigration overwhelmed courts"), q));
}

TEST(DocumentHit, MatchesBruteForceOracle) {
  std::mt19937_64 rng(424242);
  std::vector<testing::Phrase> a;
  std::vector<testing::Phrase> b;
  for (const auto& t : testing::group_a_terms()) a.push_back(testing::split_words(t));
  for (const auto& t : testing::group_b_terms()) b.push_back(testing::split_words(t));

  int hits = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int window = 1 + static_cast<int>(rng() % 80);
    const auto q = paper_query(window);
    const auto tokens = testing::random_tokens(rng, 600);
    const auto text = testing::render_text(tokens, rng);
    ASSERT_EQ(tokenize(text), tokens);
    const bool expected = testing::brute_force_hit(tokens, a, b, static_cast<std::size_t>(window));
    ASSERT_EQ(document_hit(doc("r", 2020, text), q), expected) << "trial " << trial;
    hits += expected;
  }
  // Both outcomes must be well represented for the comparison to mean much.
  EXPECT_GT(hits, 300);
  EXPECT_LT(hits, 1700);
}

TEST(DocumentHit, MonotoneInWindowAndTerms) {
  std::mt19937_64 rng(77);
  const Strings a_small{"globalization"};
  const Strings b_small{"chaos"};
  for (int trial = 0; trial < 500; ++trial) {
    const auto tokens = testing::random_tokens(rng, 400);
    const int w = 1 + static_cast<int>(rng() % 60);
    const auto narrow = ProximityQuery::make(a_small, b_small, w);
    const auto wide = ProximityQuery::make(a_small, b_small, w + 1 + static_cast<int>(rng() % 30));
    const auto more = ProximityQuery::make(testing::group_a_terms(), testing::group_b_terms(), w);
    if (tokens_hit(tokens, narrow)) {
      EXPECT_TRUE(tokens_hit(tokens, wide));
      EXPECT_TRUE(tokens_hit(tokens, more));
    }

    auto shuffled_a = testing::group_a_terms();
    auto shuffled_b = testing::group_b_terms();
    std::shuffle(shuffled_a.begin(), shuffled_a.end(), rng);
    std::shuffle(shuffled_b.begin(), shuffled_b.end(), rng);
    EXPECT_EQ(tokens_hit(tokens, more),
              tokens_hit(tokens, ProximityQuery::make(shuffled_a, shuffled_b, w)));
  }
}

TEST(CountHitPairs, BruteForce) {
  std::mt19937_64 rng(9);
  std::vector<testing::Phrase> a;
  std::vector<testing::Phrase> b;
  for (const auto& t : testing::group_a_terms()) a.push_back(testing::split_words(t));
  for (const auto& t : testing::group_b_terms()) b.push_back(testing::split_words(t));
  for (int trial = 0; trial < 300; ++trial) {
    const auto tokens = testing::random_tokens(rng, 300);
    const std::size_t w = 1 + rng() % 50;
    std::uint64_t expected = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      bool ai = false;
      for (const auto& p : a) ai = ai || testing::starts_at(tokens, i, p);
      if (!ai) continue;
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        bool bj = false;
        for (const auto& p : b) bj = bj || testing::starts_at(tokens, j, p);
        if (bj && (i > j ? i - j : j - i) <= w) ++expected;
      }
    }
    EXPECT_EQ(count_hit_pairs(tokens, paper_query(static_cast<int>(w))), expected);
    EXPECT_EQ(tokens_hit(tokens, paper_query(static_cast<int>(w))), expected > 0);
  }
}

TEST(BuildIndex, SmallCorpus) {
  const std::vector<CorpusDocument> corpus{
      doc("1", 2020, "globalization chaos"),
      doc("2", 2020, "free trade crisis and more crisis"),
      doc("3", 2020, "nothing to see"),
  };
  const auto s = build_index(corpus, paper_query());
  EXPECT_EQ(s.counts, (std::map<int, std::uint64_t>{{2020, 2}}));
  EXPECT_EQ(s.totals, (std::map<int, std::uint64_t>{{2020, 3}}));

  const auto occ = build_index(corpus, paper_query(), std::nullopt, CountMode::Occurrences);
  EXPECT_EQ(occ.counts.at(2020), 3u);
}

TEST(BuildIndex, EmptyCorpus) {
  const auto s = build_index({}, paper_query());
  EXPECT_TRUE(s.counts.empty());
  EXPECT_TRUE(s.totals.empty());
}

TEST(BuildIndex, SourceFilter) {
  const std::vector<CorpusDocument> corpus{
      doc("1", 2019, "globalization chaos", "nyt"),
      doc("2", 2019, "globalization chaos", "ap"),
      doc("3", 2020, "quiet", "nyt"),
      doc("4", 2021, "immigration crisis"),
  };
  const auto s = build_index(corpus, paper_query(), std::string("nyt"));
  EXPECT_EQ(s.counts, (std::map<int, std::uint64_t>{{2019, 1}, {2020, 0}}));
  EXPECT_EQ(s.totals, (std::map<int, std::uint64_t>{{2019, 1}, {2020, 1}}));
}

TEST(BuildIndex, RecoversPlantedCounts) {
  std::mt19937_64 rng(2024);
  const auto corpus = testing::planted_corpus(rng, 8);
  ASSERT_EQ(corpus.docs.size(), 200u);
  const auto s = build_index(corpus.docs, paper_query(), std::nullopt, CountMode::Documents, 4);
  EXPECT_EQ(s.counts, corpus.hits);
  EXPECT_EQ(s.totals, corpus.totals);
}

TEST(BuildIndex, ThreadCountDoesNotChangeSeries) {
  std::mt19937_64 rng(11);
  const auto corpus = testing::planted_corpus(rng, 20);
  const auto one = build_index(corpus.docs, paper_query(), std::nullopt, CountMode::Documents, 1);
  const auto many = build_index(corpus.docs, paper_query(), std::nullopt, CountMode::Documents, 7);
  EXPECT_EQ(one, many);
}

TEST(BuildIndex, RemovingADocumentChangesOneYearByAtMostOne) {
  std::mt19937_64 rng(5150);
  const auto corpus = testing::planted_corpus(rng, 4);
  const auto full = build_index(corpus.docs, paper_query());
  for (std::size_t drop = 0; drop < corpus.docs.size(); drop += 7) {
    auto fewer = corpus.docs;
    fewer.erase(fewer.begin() + static_cast<long>(drop));
    const auto s = build_index(fewer, paper_query());
    int changed_years = 0;
    for (const auto& [year, n] : full.counts) {
      const auto m = s.counts.count(year) ? s.counts.at(year) : 0;
      EXPECT_LE(m, n);
      EXPECT_LE(n - m, 1u);
      if (n != m) {
        ++changed_years;
        EXPECT_EQ(year, corpus.docs[drop].year);
      }
      EXPECT_LE(m, s.totals.count(year) ? s.totals.at(year) : 0);
    }
    EXPECT_LE(changed_years, 1);
  }
}

IndexSeries series(std::map<int, std::uint64_t> counts) {
  IndexSeries s;
  s.label = "t";
  s.counts = counts;
  s.totals = std::move(counts);
  return s;
}

TEST(GrowthRatio, Examples) {
  EXPECT_NEAR(growth_ratio(series({{2016, 566}, {2024, 1333}}), 2016, 2024), 1333.0 / 566.0, 1e-15);
  EXPECT_NEAR(growth_ratio(series({{2016, 566}, {2024, 1333}}), 2016, 2024), 2.36, 0.005);
  EXPECT_NEAR(growth_ratio(series({{2016, 695}, {2024, 611}}), 2016, 2024), 0.879, 0.0005);
  EXPECT_EQ(growth_ratio(series({{2010, 42}}), 2010, 2010), 1.0);
}

TEST(GrowthRatio, Errors) {
  EXPECT_THROW(growth_ratio(series({{2016, 5}}), 2016, 2024), IndexError);
  EXPECT_THROW(growth_ratio(series({{2024, 5}}), 2016, 2024), IndexError);
  EXPECT_THROW(growth_ratio(series({{2016, 0}, {2024, 5}}), 2016, 2024), IndexError);
}

TEST(Placebo, Examples) {
  const auto paper = placebo_compare(series({{2016, 566}, {2024, 1333}}),
                                     series({{2016, 695}, {2024, 611}}), 2016, 2024);
  EXPECT_NEAR(paper.treatment_ratio, 2.3551236749116606, 1e-12);
  EXPECT_NEAR(paper.control_ratio, 0.87913669064748201, 1e-12);
  EXPECT_NEAR(paper.divergence, 2.6789049984674373, 1e-12);

  const auto same = series({{2000, 10}, {2001, 30}});
  EXPECT_EQ(placebo_compare(same, same, 2000, 2001).divergence, 1.0);

  const auto flat = series({{2000, 7}, {2001, 7}});
  const auto doubling = series({{2000, 10}, {2001, 20}});
  EXPECT_EQ(placebo_compare(doubling, flat, 2000, 2001).divergence, 2.0);

  EXPECT_THROW(placebo_compare(doubling, series({{2000, 0}, {2001, 1}}), 2000, 2001), IndexError);
}

TEST(Ingestion, ReadsCorpus) {
  std::istringstream in(
      R"({"doc_id": "a", "year": 2001, "source_tag": "nyt", "text": "Free trade chaos"})"
      "\n\n"
      R"({"doc_id": "b", "year": 2002, "text": "quiet"})"
      "\n"
      R"({"doc_id": "c", "year": 2003, "source_tag": null, "text": ""})"
      "\n");
  const auto docs = read_corpus(in);
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].source_tag, "nyt");
  EXPECT_FALSE(docs[1].source_tag);
  EXPECT_FALSE(docs[2].source_tag);
  EXPECT_EQ(docs[1].year, 2002);
}

TEST(Ingestion, RejectsBadLines) {
  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    return read_corpus(in);
  };
  EXPECT_THROW(bad(R"({"doc_id": "a", "year": 1800, "text": ""})"), IndexError);
  EXPECT_THROW(bad("{\"doc_id\": \"a\", \"year\": 2000, \"text\": \"\"}\n"
                   "{\"doc_id\": \"a\", \"year\": 2001, \"text\": \"\"}"),
               IndexError);
  EXPECT_THROW(bad(R"({"doc_id": "a", "text": ""})"), IndexError);
  EXPECT_THROW(bad("not json"), IndexError);
  EXPECT_THROW(load_corpus("/nonexistent/corpus.jsonl"), IndexError);
}

TEST(Ingestion, ParsesQuery) {
  const auto q = parse_query(R"({"group_a": ["globalization", "free trade"], "group_b": ["chaos"], "window": 10})");
  EXPECT_EQ(q.window(), 10);
  EXPECT_EQ(q.group_a().size(), 2u);
  EXPECT_EQ(parse_query(R"({"group_a": ["a"], "group_b": ["b"]})").window(), 50);
  EXPECT_THROW(parse_query(R"({"group_a": [], "group_b": ["b"]})"), IndexError);
  EXPECT_THROW(parse_query(R"({"group_a": ["a"]})"), IndexError);
  EXPECT_THROW(parse_query(R"({"group_a": ["a"], "group_b": ["b"], "window": 0})"), IndexError);
}

}  // namespace
}  // namespace clubgood

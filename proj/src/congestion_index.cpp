#include <clubgood/congestion_index.hpp>

#include <clubgood/parallel.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace clubgood {

namespace {

bool is_word_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a')
                                : static_cast<char>(c);
}

std::vector<Term> tokenize_group(const std::vector<std::string>& terms,
                                 std::string_view which) {
  if (terms.empty()) {
    throw IndexError(std::string(which) + " must contain at least one term");
  }
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    auto tokens = tokenize(t);
    if (tokens.empty()) {
      throw IndexError(std::string(which) + " contains an empty term: \"" + t + "\"");
    }
    out.push_back(std::move(tokens));
  }
  return out;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (const char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(lower(c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::size_t> find_term_positions(std::span<const std::string> tokens,
                                             const Term& term) {
  std::vector<std::size_t> positions;
  if (term.empty() || term.size() > tokens.size()) return positions;
  for (std::size_t i = 0; i + term.size() <= tokens.size(); ++i) {
    if (std::equal(term.begin(), term.end(), tokens.begin() + i)) {
      positions.push_back(i);
    }
  }
  return positions;
}

ProximityQuery ProximityQuery::make(const std::vector<std::string>& group_a,
                                    const std::vector<std::string>& group_b,
                                    int window) {
  if (window < 1) throw IndexError("window must be at least 1");
  return ProximityQuery(tokenize_group(group_a, "group_a"),
                        tokenize_group(group_b, "group_b"), window);
}

std::vector<std::size_t> group_positions(std::span<const std::string> tokens,
                                         const std::vector<Term>& group) {
  std::vector<std::size_t> out;
  for (const auto& term : group) {
    const auto found = find_term_positions(tokens, term);
    out.insert(out.end(), found.begin(), found.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool tokens_hit(std::span<const std::string> tokens, const ProximityQuery& query) {
  const auto a = group_positions(tokens, query.group_a());
  if (a.empty()) return false;
  const auto b = group_positions(tokens, query.group_b());
  const auto window = static_cast<std::size_t>(query.window());

  // Both lists are sorted; walk them together looking for a close pair.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t dist = a[i] > b[j] ? a[i] - b[j] : b[j] - a[i];
    if (dist <= window) return true;
    if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return false;
}

bool document_hit(const CorpusDocument& doc, const ProximityQuery& query) {
  return tokens_hit(tokenize(doc.text), query);
}

std::uint64_t count_hit_pairs(std::span<const std::string> tokens,
                              const ProximityQuery& query) {
  const auto a = group_positions(tokens, query.group_a());
  const auto b = group_positions(tokens, query.group_b());
  const auto window = static_cast<std::size_t>(query.window());
  std::uint64_t pairs = 0;
  for (const std::size_t pa : a) {
    const std::size_t lo = pa >= window ? pa - window : 0;
    const auto first = std::lower_bound(b.begin(), b.end(), lo);
    const auto last = std::upper_bound(first, b.end(), pa + window);
    pairs += static_cast<std::uint64_t>(last - first);
  }
  return pairs;
}

IndexSeries build_index(std::span<const CorpusDocument> corpus,
                        const ProximityQuery& query,
                        const std::optional<std::string>& source_filter,
                        CountMode mode, unsigned threads, std::string label) {
  const auto selected = [&](const CorpusDocument& d) {
    return !source_filter || d.source_tag == source_filter;
  };

  std::vector<std::uint64_t> scores(corpus.size(), 0);
  parallel_for(
      corpus.size(),
      [&](std::size_t i) {
        if (!selected(corpus[i])) return;
        const auto tokens = tokenize(corpus[i].text);
        scores[i] = mode == CountMode::Documents
                        ? static_cast<std::uint64_t>(tokens_hit(tokens, query))
                        : count_hit_pairs(tokens, query);
      },
      threads);

  IndexSeries series;
  series.label = std::move(label);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!selected(corpus[i])) continue;
    series.counts[corpus[i].year] += scores[i];
    series.totals[corpus[i].year] += 1;
  }
  return series;
}

double growth_ratio(const IndexSeries& series, int year_from, int year_to) {
  const auto from = series.counts.find(year_from);
  const auto to = series.counts.find(year_to);
  if (from == series.counts.end()) {
    throw IndexError("year " + std::to_string(year_from) + " missing from series " + series.label);
  }
  if (to == series.counts.end()) {
    throw IndexError("year " + std::to_string(year_to) + " missing from series " + series.label);
  }
  if (from->second == 0) {
    throw IndexError("zero baseline count in year " + std::to_string(year_from) +
                     " of series " + series.label);
  }
  return static_cast<double>(to->second) / static_cast<double>(from->second);
}

PlaceboComparison placebo_compare(const IndexSeries& treatment,
                                  const IndexSeries& control, int year_from,
                                  int year_to) {
  const double t = growth_ratio(treatment, year_from, year_to);
  const double c = growth_ratio(control, year_from, year_to);
  if (c == 0) throw IndexError("control series has zero growth ratio");
  return {t, c, t / c};
}

std::vector<CorpusDocument> read_corpus(std::istream& in) {
  std::vector<CorpusDocument> docs;
  std::unordered_set<std::string> ids;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "corpus line " + std::to_string(lineno) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      CorpusDocument doc;
      doc.doc_id = j.at("doc_id").get<std::string>();
      doc.year = j.at("year").get<int>();
      doc.text = j.at("text").get<std::string>();
      if (const auto it = j.find("source_tag"); it != j.end() && !it->is_null()) {
        doc.source_tag = it->get<std::string>();
      }
      if (doc.year < kMinYear || doc.year > kMaxYear) {
        throw IndexError(where + "year " + std::to_string(doc.year) + " out of range");
      }
      if (!ids.insert(doc.doc_id).second) {
        throw IndexError(where + "duplicate doc_id " + doc.doc_id);
      }
      docs.push_back(std::move(doc));
    } catch (const nlohmann::json::exception& e) {
      throw IndexError(where + e.what());
    }
  }
  return docs;
}

std::vector<CorpusDocument> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IndexError("cannot read corpus file: " + path);
  return read_corpus(in);
}

ProximityQuery parse_query(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    const int window = j.value("window", ProximityQuery::kDefaultWindow);
    return ProximityQuery::make(j.at("group_a").get<std::vector<std::string>>(),
                                j.at("group_b").get<std::vector<std::string>>(),
                                window);
  } catch (const nlohmann::json::exception& e) {
    throw IndexError(std::string("invalid query: ") + e.what());
  }
}

ProximityQuery load_query(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IndexError("cannot read query file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_query(buf.str());
}

}  // namespace clubgood

#ifndef CLUBGOOD_CONGESTION_INDEX_HPP
#define CLUBGOOD_CONGESTION_INDEX_HPP

// Proximity co-occurrence counting over a dated text corpus.
//
// A query pairs two groups of terms (single words or phrases) with a token
// window. A document hits when some occurrence of a group A term starts
// within `window` tokens of some occurrence of a group B term, boundary
// included. Yearly hit counts form an index series.

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clubgood {

class IndexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusDocument {
  std::string doc_id;
  int year = 0;
  std::string text;
  std::optional<std::string> source_tag;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

/// Lowercased ASCII alphanumeric runs. Bytes >= 0x80 count as word
/// characters so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

using Term = std::vector<std::string>;

/// Start positions of every occurrence of `term`, overlaps included.
std::vector<std::size_t> find_term_positions(std::span<const std::string> tokens,
                                             const Term& term);

class ProximityQuery {
 public:
  static constexpr int kDefaultWindow = 50;

  /// Terms are tokenized with tokenize(), so "free trade" and "free-trade"
  /// are the same phrase. Throws IndexError for an empty group, a term with
  /// no tokens, or window < 1.
  static ProximityQuery make(const std::vector<std::string>& group_a,
                             const std::vector<std::string>& group_b,
                             int window = kDefaultWindow);

  const std::vector<Term>& group_a() const { return group_a_; }
  const std::vector<Term>& group_b() const { return group_b_; }
  int window() const { return window_; }

 private:
  ProximityQuery(std::vector<Term> a, std::vector<Term> b, int window)
      : group_a_(std::move(a)), group_b_(std::move(b)), window_(window) {}

  std::vector<Term> group_a_;
  std::vector<Term> group_b_;
  int window_;
};

/// Sorted, de-duplicated start positions of any term in `group`.
std::vector<std::size_t> group_positions(std::span<const std::string> tokens,
                                         const std::vector<Term>& group);

bool tokens_hit(std::span<const std::string> tokens, const ProximityQuery& query);
bool document_hit(const CorpusDocument& doc, const ProximityQuery& query);

/// Number of (group A position, group B position) pairs within the window.
std::uint64_t count_hit_pairs(std::span<const std::string> tokens,
                              const ProximityQuery& query);

enum class CountMode { Documents, Occurrences };

struct IndexSeries {
  std::string label;
  std::map<int, std::uint64_t> counts;
  std::map<int, std::uint64_t> totals;

  friend bool operator==(const IndexSeries&, const IndexSeries&) = default;
};

/// counts[y]: documents of year y (matching source_filter, if any) that hit;
/// totals[y]: documents of year y scanned. In Occurrences mode counts[y]
/// sums count_hit_pairs instead.
IndexSeries build_index(std::span<const CorpusDocument> corpus,
                        const ProximityQuery& query,
                        const std::optional<std::string>& source_filter = std::nullopt,
                        CountMode mode = CountMode::Documents,
                        unsigned threads = 0, std::string label = "index");

double growth_ratio(const IndexSeries& series, int year_from, int year_to);

struct PlaceboComparison {
  double treatment_ratio;
  double control_ratio;
  double divergence;  // treatment_ratio / control_ratio
};

PlaceboComparison placebo_compare(const IndexSeries& treatment,
                                  const IndexSeries& control, int year_from,
                                  int year_to);

// ---------------------------------------------------------------------------
// Ingestion

/// One JSON object per line: doc_id, year, text, optional source_tag.
/// Blank lines are skipped. Throws IndexError naming the offending line.
std::vector<CorpusDocument> read_corpus(std::istream& in);
std::vector<CorpusDocument> load_corpus(const std::string& path);

/// {"group_a": [...], "group_b": [...], "window": 50}; window optional.
ProximityQuery parse_query(std::string_view json_text);
ProximityQuery load_query(const std::string& path);

}  // namespace clubgood

#endif  // CLUBGOOD_CONGESTION_INDEX_HPP

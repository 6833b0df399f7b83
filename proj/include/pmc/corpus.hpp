#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pmc {

/// Calendar date with ISO-8601 reduced precision ("YYYY-MM" or "YYYY-MM-DD").
struct IsoDate {
  int year = 0;
  unsigned month = 1;
  std::optional<unsigned> day;

  static IsoDate parse(const std::string& text);
  std::string to_string() const;
  /// Position on a continuous year axis (year + month and day fraction).
  double decimal_year() const;

  friend auto operator<=>(const IsoDate& a, const IsoDate& b) {
    if (auto c = a.year <=> b.year; c != 0) return c;
    if (auto c = a.month <=> b.month; c != 0) return c;
    return a.day.value_or(0) <=> b.day.value_or(0);
  }
  friend bool operator==(const IsoDate&, const IsoDate&) = default;
};

struct PolicyDocument {
  std::string id;
  std::string title;
  std::string issuer;
  IsoDate release_date;
  std::string goal;
  std::string body;  ///< normalized
};

struct TokenStream {
  std::string doc_id;
  std::vector<std::string> tokens;
};

/// Term set compiled for greedy longest-match lookup. Terms are stored
/// normalized and case-folded; insertion order is irrelevant.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(const std::set<std::string>& terms);

  /// Length in code points of the longest term that is a prefix of
  /// `text.substr(pos)`, or 0.
  std::size_t longest_match(const std::u32string& text, std::size_t pos) const;
  bool empty() const noexcept { return nodes_.size() == 1; }

 private:
  struct Node {
    std::map<char32_t, std::size_t> children;
    bool terminal = false;
  };
  std::vector<Node> nodes_{Node{}};
};

struct Corpus {
  std::vector<PolicyDocument> documents;
  std::set<std::string> dictionary;  ///< normalized, case-folded
  std::set<std::string> stopwords;   ///< normalized, case-folded

  const PolicyDocument* find(const std::string& id) const;
};

struct CorpusOptions {
  std::optional<std::filesystem::path> dictionary_path;
  std::optional<std::filesystem::path> stopwords_path;
};

/// Reads a manifest of `[document]` records. Every problem found is reported
/// as one diagnostic naming the entry; the InputError lists all of them.
Corpus load_corpus(const std::filesystem::path& manifest_path, const CorpusOptions& options = {});

/// One term per line, normalized and case-folded, blank lines skipped.
std::set<std::string> load_term_list(const std::filesystem::path& path);

/// Greedy left-to-right longest match against the dictionary; uncovered spans
/// split into word runs (ideographs one per token); stopwords dropped.
TokenStream segment(const PolicyDocument& doc, const std::set<std::string>& dictionary,
                    const std::set<std::string>& stopwords);
TokenStream segment(const PolicyDocument& doc, const Dictionary& dictionary,
                    const std::set<std::string>& stopwords);

/// Segments every document in manifest order.
std::vector<TokenStream> segment_corpus(const Corpus& corpus);

}  // namespace pmc

#include "pmc/corpus.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

#include "pmc/error.hpp"
#include "pmc/text.hpp"

namespace pmc {

namespace fs = std::filesystem;

IsoDate IsoDate::parse(const std::string& text) {
  static const std::regex pattern(R"((\d{4})-(\d{2})(?:-(\d{2}))?)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw InputError("unparseable date \"" + text + "\"");
  IsoDate date;
  date.year = std::stoi(m[1]);
  date.month = static_cast<unsigned>(std::stoi(m[2]));
  if (m[3].matched) date.day = static_cast<unsigned>(std::stoi(m[3]));
  const std::chrono::year_month_day ymd{std::chrono::year{date.year}, std::chrono::month{date.month},
                                        std::chrono::day{date.day.value_or(1)}};
  if (!ymd.ok()) throw InputError("invalid calendar date \"" + text + "\"");
  return date;
}

std::string IsoDate::to_string() const {
  char buf[16];
  if (day)
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, *day);
  else
    std::snprintf(buf, sizeof buf, "%04d-%02u", year, month);
  return buf;
}

double IsoDate::decimal_year() const {
  return year + (month - 1) / 12.0 + (day.value_or(1) - 1) / 365.0;
}

Dictionary::Dictionary(const std::set<std::string>& terms) {
  for (const auto& term : terms) {
    const std::u32string cps = text::fold_case(text::decode_utf8(text::normalize(term)));
    if (cps.empty()) continue;
    std::size_t node = 0;
    for (char32_t c : cps) {
      auto it = nodes_[node].children.find(c);
      if (it == nodes_[node].children.end()) {
        nodes_.emplace_back();
        it = nodes_[node].children.emplace(c, nodes_.size() - 1).first;
      }
      node = it->second;
    }
    nodes_[node].terminal = true;
  }
}

std::size_t Dictionary::longest_match(const std::u32string& text, std::size_t pos) const {
  std::size_t node = 0;
  std::size_t best = 0;
  for (std::size_t i = pos; i < text.size(); ++i) {
    auto it = nodes_[node].children.find(text[i]);
    if (it == nodes_[node].children.end()) break;
    node = it->second;
    if (nodes_[node].terminal) best = i - pos + 1;
  }
  return best;
}

const PolicyDocument* Corpus::find(const std::string& id) const {
  for (const auto& doc : documents)
    if (doc.id == id) return &doc;
  return nullptr;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct RawEntry {
  std::size_t line = 0;
  std::map<std::string, std::string> fields;
};

std::vector<RawEntry> parse_manifest(const std::string& content, std::vector<std::string>& diagnostics) {
  std::vector<RawEntry> entries;
  std::istringstream in(content);
  std::string line;
  std::size_t line_no = 0;
  static const std::set<std::string> known{"id", "title", "issuer", "release_date", "goal", "body"};
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t == "[document]") {
      entries.push_back(RawEntry{line_no, {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || entries.empty()) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": expected \"[document]\" or \"key = value\"");
      continue;
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    auto& entry = entries.back();
    if (!known.count(key)) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": unknown key \"" + key + "\"");
    } else if (!entry.fields.emplace(key, value).second) {
      diagnostics.push_back("line " + std::to_string(line_no) + ": repeated key \"" + key + "\"");
    }
  }
  return entries;
}

}  // namespace

std::set<std::string> load_term_list(const fs::path& path) {
  std::set<std::string> terms;
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string term;
    try {
      term = text::fold_case(text::normalize(line));
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!term.empty()) terms.insert(std::move(term));
  }
  return terms;
}

Corpus load_corpus(const fs::path& manifest_path, const CorpusOptions& options) {
  std::vector<std::string> diagnostics;
  const std::vector<RawEntry> entries = parse_manifest(read_file(manifest_path), diagnostics);
  if (entries.empty() && diagnostics.empty()) throw InputError("empty corpus");

  const fs::path base = manifest_path.parent_path();
  Corpus corpus;
  std::set<std::string> seen;
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const auto& fields = entries[n].fields;
    const auto get = [&](const char* key) -> std::string {
      auto it = fields.find(key);
      return it == fields.end() ? std::string{} : it->second;
    };
    PolicyDocument doc;
    doc.id = get("id");
    const std::string who = doc.id.empty()
                                ? "entry #" + std::to_string(n + 1) + " (line " + std::to_string(entries[n].line) + ")"
                                : "entry \"" + doc.id + "\"";
    auto report = [&](const std::string& msg) { diagnostics.push_back(who + ": " + msg); };
    if (doc.id.empty()) {
      report("missing id");
    } else if (!seen.insert(doc.id).second) {
      report("duplicate id \"" + doc.id + "\"");
    }
    for (const char* required : {"title", "release_date", "body"})
      if (!fields.count(required)) report(std::string("missing ") + required);

    doc.title = get("title");
    doc.issuer = get("issuer");
    doc.goal = get("goal");
    if (fields.count("release_date")) {
      try {
        doc.release_date = IsoDate::parse(get("release_date"));
      } catch (const InputError& e) {
        report(e.what());
      }
    }
    if (fields.count("body")) {
      const fs::path body_path = base / get("body");
      if (!fs::is_regular_file(body_path)) {
        report("missing body file " + body_path.string());
      } else {
        try {
          doc.body = text::normalize(read_file(body_path));
          if (doc.body.empty()) report("empty body");
        } catch (const InputError& e) {
          report(body_path.string() + ": " + e.what());
        }
      }
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (!diagnostics.empty()) {
    throw InputError(manifest_path.string() + ": " + std::to_string(diagnostics.size()) + " problem(s) in manifest",
                     std::move(diagnostics));
  }
  if (options.dictionary_path) corpus.dictionary = load_term_list(*options.dictionary_path);
  if (options.stopwords_path) corpus.stopwords = load_term_list(*options.stopwords_path);
  return corpus;
}

TokenStream segment(const PolicyDocument& doc, const Dictionary& dictionary,
                    const std::set<std::string>& stopwords) {
  std::set<std::string> folded_stopwords;
  for (const auto& word : stopwords) folded_stopwords.insert(text::fold_case(text::normalize(word)));
  const std::u32string body = text::fold_case(text::decode_utf8(doc.body));
  TokenStream stream{doc.id, {}};
  auto emit = [&](std::u32string_view cps) {
    std::string token = text::encode_utf8(cps);
    if (!token.empty() && !folded_stopwords.count(token)) stream.tokens.push_back(std::move(token));
  };
  // Uncovered span [from, to): word runs, ideographs one per token.
  auto flush = [&](std::size_t from, std::size_t to) {
    std::size_t run = from;
    for (std::size_t i = from; i < to; ++i) {
      const char32_t c = body[i];
      if (text::is_word_char(c) && !text::is_ideograph(c)) continue;
      emit(std::u32string_view(body).substr(run, i - run));
      if (text::is_ideograph(c)) emit(std::u32string_view(body).substr(i, 1));
      run = i + 1;
    }
    emit(std::u32string_view(body).substr(run, to - run));
  };

  std::size_t uncovered = 0;
  std::size_t pos = 0;
  while (pos < body.size()) {
    const std::size_t len = dictionary.longest_match(body, pos);
    if (len == 0) {
      ++pos;
      continue;
    }
    flush(uncovered, pos);
    emit(std::u32string_view(body).substr(pos, len));
    pos += len;
    uncovered = pos;
  }
  flush(uncovered, body.size());
  return stream;
}

TokenStream segment(const PolicyDocument& doc, const std::set<std::string>& dictionary,
                    const std::set<std::string>& stopwords) {
  return segment(doc, Dictionary(dictionary), stopwords);
}

std::vector<TokenStream> segment_corpus(const Corpus& corpus) {
  const Dictionary dictionary(corpus.dictionary);
  std::vector<TokenStream> streams;
  streams.reserve(corpus.documents.size());
  for (const auto& doc : corpus.documents) streams.push_back(segment(doc, dictionary, corpus.stopwords));
  return streams;
}

}  // namespace pmc

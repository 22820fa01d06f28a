#include "slab/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "slab/error.hpp"
#include "slab/log.hpp"
#include "slab/rng.hpp"

namespace slab::corpus {
namespace {

constexpr std::string_view kHighlightMarker = "@highlight";
constexpr std::string_view kSummaryMarker = "@summary";
constexpr std::string_view kCnnTag = "(CNN)";
constexpr std::string_view kRemovalSet = "$%^&*#";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = text.find('\n', start);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string_view>& lines, std::size_t first,
                       std::size_t last) {
  std::string out;
  for (std::size_t i = first; i < last; ++i) {
    if (i > first) out += '\n';
    out += lines[i];
  }
  return std::string(trim(out));
}

bool iequals_prefix(std::string_view text, std::size_t pos, std::string_view key) {
  if (text.size() - pos < key.size()) return false;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
        static_cast<unsigned char>(key[i])) {
      return false;
    }
  }
  return true;
}

std::vector<std::filesystem::path> sorted_files(const std::filesystem::path& root,
                                                std::string_view extension) {
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    fail(ErrorKind::kIoFailure, "not a directory: " + root.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(root, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (!extension.empty() && entry.path().extension() != extension) continue;
    files.push_back(entry.path());
  }
  if (ec) fail(ErrorKind::kIoFailure, "cannot list " + root.string() + ": " + ec.message());
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) { return a.filename() < b.filename(); });
  return files;
}

}  // namespace

const std::vector<std::pair<std::string_view, std::string_view>>& contraction_table() {
  static const std::vector<std::pair<std::string_view, std::string_view>> table{
      {"ain't", "is not"},       {"aren't", "are not"},     {"can't", "cannot"},
      {"couldn't", "could not"}, {"didn't", "did not"},     {"doesn't", "does not"},
      {"don't", "do not"},       {"hadn't", "had not"},     {"hasn't", "has not"},
      {"haven't", "have not"},   {"he'd", "he would"},      {"he'll", "he will"},
      {"he's", "he is"},         {"i'd", "i would"},        {"i'll", "i will"},
      {"i'm", "i am"},           {"i've", "i have"},        {"isn't", "is not"},
      {"it'll", "it will"},      {"it's", "it is"},         {"let's", "let us"},
      {"mightn't", "might not"}, {"mustn't", "must not"},   {"shan't", "shall not"},
      {"she'd", "she would"},    {"she'll", "she will"},    {"she's", "she is"},
      {"shouldn't", "should not"}, {"that's", "that is"},   {"there's", "there is"},
      {"they'd", "they would"},  {"they'll", "they will"},  {"they're", "they are"},
      {"they've", "they have"},  {"wasn't", "was not"},     {"we'd", "we would"},
      {"we'll", "we will"},      {"we're", "we are"},       {"we've", "we have"},
      {"weren't", "were not"},   {"what's", "what is"},     {"where's", "where is"},
      {"who's", "who is"},       {"won't", "will not"},     {"wouldn't", "would not"},
      {"you'd", "you would"},    {"you'll", "you will"},    {"you're", "you are"},
      {"you've", "you have"},
  };
  return table;
}

Document parse_story(std::string_view raw, std::string id) {
  const auto lines = split_lines(raw);
  std::size_t first_marker = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]) == kHighlightMarker) {
      first_marker = i;
      break;
    }
  }

  Document doc;
  doc.id = std::move(id);
  doc.article_raw = join_lines(lines, 0, first_marker);
  if (doc.article_raw.empty()) {
    fail(ErrorKind::kEmptyArticle, "story '" + doc.id + "' has no article text");
  }

  std::size_t i = first_marker;
  while (i < lines.size()) {
    const std::string_view line = trim(lines[i]);
    if (line.empty()) {
      ++i;
      continue;
    }
    if (line != kHighlightMarker) {
      fail(ErrorKind::kMalformedStory,
           "story '" + doc.id + "': stray text after highlight at line " + std::to_string(i + 1));
    }
    std::size_t j = i + 1;
    while (j < lines.size() && trim(lines[j]).empty()) ++j;
    if (j == lines.size() || trim(lines[j]) == kHighlightMarker) {
      fail(ErrorKind::kMalformedStory,
           "story '" + doc.id + "': @highlight at line " + std::to_string(i + 1) +
               " has no sentence");
    }
    doc.highlights.emplace_back(trim(lines[j]));
    i = j + 1;
  }

  for (std::size_t h = 0; h < doc.highlights.size(); ++h) {
    if (h) doc.summary_raw += " . ";
    doc.summary_raw += doc.highlights[h];
  }
  return doc;
}

std::string expand_contractions(std::string_view text) {
  const auto& table = contraction_table();
  std::string out;
  out.reserve(text.size() + text.size() / 8);
  std::size_t i = 0;
  while (i < text.size()) {
    const bool at_word_start = i == 0 || !is_word_char(text[i - 1]);
    bool replaced = false;
    if (at_word_start) {
      for (const auto& [key, expansion] : table) {
        if (!iequals_prefix(text, i, key)) continue;
        const std::size_t end = i + key.size();
        if (end < text.size() && is_word_char(text[end])) continue;
        out += expansion;
        i = end;
        replaced = true;
        break;
      }
    }
    if (!replaced) out += text[i++];
  }
  return out;
}

std::string strip_artifacts(std::string_view text) {
  std::string kept;
  kept.reserve(text.size());
  for (char c : text) {
    if (kRemovalSet.find(c) == std::string_view::npos) kept += c;
  }
  // Removing one tag can splice together another, e.g. "(C(CNN)NN)".
  for (std::size_t hit = kept.find(kCnnTag); hit != std::string::npos; hit = kept.find(kCnnTag)) {
    kept.erase(hit, kCnnTag.size());
  }

  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char c : kept) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string to_lower_ascii(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

Document clean_document(Document doc) {
  if (trim(doc.article_raw).empty()) {
    fail(ErrorKind::kEmptyArticle, "document '" + doc.id + "' has no article text");
  }
  // Stripping can splice a contraction back together ("isn%'t"), so the two
  // passes repeat until neither changes the text.
  const auto clean = [](std::string_view s) {
    std::string text = strip_artifacts(expand_contractions(s));
    for (int pass = 0; pass < 16; ++pass) {
      std::string next = strip_artifacts(expand_contractions(text));
      if (next == text) break;
      text = std::move(next);
    }
    return to_lower_ascii(text);
  };
  doc.article_clean = clean(doc.article_raw);
  doc.summary_clean = clean(doc.summary_raw);
  return doc;
}

CorpusSplits split_documents(std::vector<Document> docs, const SplitFractions& fractions,
                             std::uint64_t seed) {
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) fail(ErrorKind::kBadFractions, "split fraction outside [0, 1]");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::kBadFractions, "split fractions sum to " + std::to_string(sum));
  }

  RngStream rng(seed, 0);
  for (std::size_t i = docs.size(); i > 1; --i) {
    std::swap(docs[i - 1], docs[rng.next_index(i)]);
  }

  // Largest-remainder apportionment: every count is within one document of
  // its exact share, and the counts sum to the total.
  const std::size_t n = docs.size();
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainders{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double exact = fractions[k] * static_cast<double>(n);
    counts[k] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainders[k] = exact - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainders[a] > remainders[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3) {
    ++counts[order[k]];
    ++assigned;
  }
  while (assigned > n) {
    for (std::size_t k = 3; k-- > 0 && assigned > n;) {
      if (counts[order[k]] > 0) {
        --counts[order[k]];
        --assigned;
      }
    }
  }

  CorpusSplits splits;
  splits.split_seed = seed;
  auto it = std::make_move_iterator(docs.begin());
  splits.train.assign(it, it + static_cast<std::ptrdiff_t>(counts[0]));
  it += static_cast<std::ptrdiff_t>(counts[0]);
  splits.validation.assign(it, it + static_cast<std::ptrdiff_t>(counts[1]));
  it += static_cast<std::ptrdiff_t>(counts[1]);
  splits.test.assign(it, std::make_move_iterator(docs.end()));
  return splits;
}

StoryLoad load_story_directory(const std::filesystem::path& root) {
  StoryLoad load;
  for (const auto& path : sorted_files(root, {})) {
    try {
      load.documents.push_back(
          clean_document(parse_story(read_file(path), path.stem().string())));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kMalformedStory && e.kind() != ErrorKind::kEmptyArticle) throw;
      log_warning("skipping " + path.filename().string() + ": " + e.what());
      ++load.skipped;
    }
  }
  return load;
}

CorpusSplits load_corpus(const std::filesystem::path& root, const SplitFractions& fractions,
                         std::uint64_t seed) {
  StoryLoad load = load_story_directory(root);
  if (load.documents.empty()) {
    fail(ErrorKind::kNoDocuments, "no parseable story files under " + root.string());
  }
  CorpusSplits splits = split_documents(std::move(load.documents), fractions, seed);
  splits.skipped = load.skipped;
  return splits;
}

std::string serialize_clean(const Document& doc) {
  std::string out = doc.article_clean;
  out += '\n';
  out += kSummaryMarker;
  out += '\n';
  out += doc.summary_clean;
  out += '\n';
  return out;
}

Document parse_clean(std::string_view text, std::string id) {
  const auto lines = split_lines(text);
  std::size_t marker = lines.size();
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i] == kSummaryMarker) {
      marker = i;
      break;
    }
  }
  if (marker == lines.size()) {
    fail(ErrorKind::kMalformedStory, "cleaned document '" + id + "' lacks an @summary line");
  }
  Document doc;
  doc.id = std::move(id);
  doc.article_clean = join_lines(lines, 0, marker);
  doc.summary_clean = join_lines(lines, marker + 1, lines.size());
  return doc;
}

void write_clean_corpus(const std::vector<Document>& docs, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::kIoFailure, "cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& doc : docs) {
    write_file(out_dir / (doc.id + std::string(kCleanExtension)), serialize_clean(doc));
  }
}

std::vector<Document> load_clean_directory(const std::filesystem::path& root) {
  std::vector<Document> docs;
  for (const auto& path : sorted_files(root, kCleanExtension)) {
    docs.push_back(parse_clean(read_file(path), path.stem().string()));
  }
  return docs;
}

StoryLoad load_any_directory(const std::filesystem::path& root) {
  if (!sorted_files(root, kCleanExtension).empty()) {
    return {load_clean_directory(root), 0};
  }
  return load_story_directory(root);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIoFailure, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorKind::kIoFailure, "cannot read " + path.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIoFailure, "cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorKind::kIoFailure, "cannot write " + path.string());
}

}  // namespace slab::corpus

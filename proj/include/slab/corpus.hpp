#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slab::corpus {

struct Document {
  std::string id;
  std::string article_raw;
  std::string article_clean;
  std::string summary_raw;
  std::string summary_clean;
  // Highlight sentences in file order, before joining.
  std::vector<std::string> highlights;

  bool operator==(const Document&) const = default;
};

struct CorpusSplits {
  std::vector<Document> train;
  std::vector<Document> validation;
  std::vector<Document> test;
  std::uint64_t split_seed = 0;
  // Story files skipped because they failed to parse.
  std::size_t skipped = 0;
};

using SplitFractions = std::array<double, 3>;

inline constexpr SplitFractions kDefaultFractions{0.92, 0.04, 0.04};

// Contraction keys and their expansions, lowercase. Version 1 of the table.
const std::vector<std::pair<std::string_view, std::string_view>>& contraction_table();

// Splits a story body at its `@highlight` markers. Highlights are joined
// with " . ". Throws MalformedStory or EmptyArticle.
Document parse_story(std::string_view raw, std::string id = {});

std::string expand_contractions(std::string_view text);
std::string strip_artifacts(std::string_view text);
std::string to_lower_ascii(std::string_view text);

// Fills the clean fields from the raw ones. Throws EmptyArticle.
Document clean_document(Document doc);

// Deterministic Fisher-Yates shuffle followed by a largest-remainder split.
// Throws BadFractions.
CorpusSplits split_documents(std::vector<Document> docs, const SplitFractions& fractions,
                             std::uint64_t seed);

// Parses and cleans every story file under root (lexicographic file-name
// order), skipping malformed ones with a warning on stderr, then splits.
// Throws IoFailure, NoDocuments, BadFractions.
CorpusSplits load_corpus(const std::filesystem::path& root, const SplitFractions& fractions,
                         std::uint64_t seed);

struct StoryLoad {
  std::vector<Document> documents;
  std::size_t skipped = 0;
};

StoryLoad load_story_directory(const std::filesystem::path& root);

// Cleaned on-disk form: article_clean, a line `@summary`, summary_clean.
inline constexpr std::string_view kCleanExtension = ".clean";
std::string serialize_clean(const Document& doc);
Document parse_clean(std::string_view text, std::string id = {});
void write_clean_corpus(const std::vector<Document>& docs, const std::filesystem::path& out_dir);
std::vector<Document> load_clean_directory(const std::filesystem::path& root);

// Loads `root` as a cleaned corpus when it holds `.clean` files, otherwise as
// story files.
StoryLoad load_any_directory(const std::filesystem::path& root);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace slab::corpus

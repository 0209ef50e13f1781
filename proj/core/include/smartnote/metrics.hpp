#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace smartnote {

/// A commit as the metrics see it: sha plus the PR it belongs to, if any.
struct CommitRef {
  std::string sha;
  std::optional<int> pr;
};

/// Commit list file: one `sha[,pr]` per line; blank lines and lines
/// starting with '#' are ignored. Throws ParseError.
std::vector<CommitRef> parse_commit_list(std::string_view text);

/// Share of commits mentioned in the note: a hex run of 7+ characters that
/// prefixes the sha, or "#N" (not followed by a digit) for the commit's PR.
/// Throws NoCommits.
double commit_coverage(std::string_view note_markdown, const std::vector<CommitRef>& commits);

/// Shannon entropy in bits of the item distribution over H2/H3 categories.
double information_entropy(std::string_view note_markdown);

/// Entropy of a raw count distribution (zeros ignored).
double entropy_of_counts(const std::vector<std::size_t>& counts);

/// Sentences: split after '.', '!' or '?' followed by whitespace and an
/// uppercase letter, unless the word is a listed abbreviation; every line
/// break also ends a sentence. Empty pieces are dropped.
std::vector<std::string> split_sentences(std::string_view prose);

/// Whitespace tokens holding at least one letter or digit.
std::vector<std::string> prose_words(std::string_view prose);

struct Readability {
  double ari = 0.0;
  double dale_chall = 0.0;
  std::size_t words = 0;
  std::size_t sentences = 0;
  std::size_t characters = 0;
  std::size_t difficult_words = 0;
};

/// ARI = 4.71 * chars/words + 0.5 * words/sentences - 21.43 (chars are
/// letters and digits). Dale-Chall = 0.1579 * pct difficult + 0.0496 *
/// words/sentences, plus 3.6365 when more than 5% are difficult. The text
/// is markdown and is reduced to prose first. Throws EmptyText.
Readability readability(std::string_view note_text);

/// Familiar-word check against the bundled Dale list with inflections
/// stripped (-s, -es, -ies, -ed, -ied, -ing, -er, -est, -ly, 's). Words
/// containing digits are familiar.
bool is_familiar_word(std::string_view word);

/// Entity tokens / all whitespace tokens. Entities: lexicon names
/// (operating systems, languages, libraries, tools), CamelCase, snake_case,
/// dotted identifiers, and tokens inside backticks.
double entity_percentage(std::string_view note_text);
bool is_entity_token(std::string_view token);

/// At least one bullet with non-empty text.
bool success(std::string_view note_markdown);

/// Approximate token count of the note without HTML comments.
std::size_t note_token_count(std::string_view note_markdown);

struct MetricReport {
  std::optional<double> commit_coverage;  // absent without a commit list
  std::size_t token_count = 0;
  double information_entropy = 0.0;
  std::optional<double> ari;  // absent for notes without words
  std::optional<double> dale_chall;
  double entity_percentage = 0.0;
  bool success = false;
  std::string tokenizer;
};

MetricReport evaluate_note(std::string_view note_markdown, const std::vector<CommitRef>* commits);

std::string to_json(const MetricReport& r);
/// Two-column (or one column per report) plain-text table.
std::string format_table(const std::vector<std::pair<std::string, MetricReport>>& reports);

}  // namespace smartnote

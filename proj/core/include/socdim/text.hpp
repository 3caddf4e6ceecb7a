#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace socdim {

enum class TokenKind { kWord, kPunctuation, kEmoticon, kNumber };

// `surface` is lowercase. `offset`/`length` locate the token in the text it
// was cut from, so case-sensitive features can look at the original spelling.
struct Token {
  std::string surface;
  TokenKind kind = TokenKind::kWord;
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const Token& a, const Token& b) {
    return a.surface == b.surface && a.kind == b.kind;
  }
};

struct Sentence {
  std::string text;
  std::vector<Token> tokens;  // empty iff text has no letter or digit
  std::size_t index_in_text = 0;
};

struct Passage {
  Sentence target;
  std::optional<Sentence> before;
  std::optional<Sentence> after;
};

// Abbreviations that do not end a sentence and the 1st/2nd person pronouns
// that mark a sentence as conversational.
struct TextRules {
  std::set<std::string, std::less<>> abbreviations;
  std::set<std::string, std::less<>> pronouns;

  static const TextRules& builtin();
  // Reads abbreviations.txt and pronouns.txt (one entry per line).
  static TextRules load(const std::filesystem::path& dir);
};

std::vector<Token> tokenize(std::string_view text);

// Builds a Sentence from raw text (tokenized, index 0).
Sentence make_sentence(std::string text, std::size_t index = 0);

std::vector<Sentence> split_sentences(std::string_view text,
                                      const TextRules& rules = TextRules::builtin());

// Tokens of kind word or number.
std::size_t word_count(const std::vector<Token>& tokens);
inline bool is_wordlike(const Token& t) {
  return t.kind == TokenKind::kWord || t.kind == TokenKind::kNumber;
}

bool is_conversational(const Sentence& sentence, const TextRules& rules = TextRules::builtin());

std::vector<Passage> build_passages(std::string_view text, std::size_t min_len = 6,
                                    std::size_t max_len = 20,
                                    const TextRules& rules = TextRules::builtin());

// Space-joined surfaces; tokenize(join_tokens(t)) == t.
std::string join_tokens(const std::vector<Token>& tokens);

}  // namespace socdim

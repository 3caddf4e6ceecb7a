#include "socdim/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>

#include "socdim/csv.hpp"
#include "socdim/error.hpp"

namespace socdim {
namespace {

bool is_letter(unsigned char c) { return std::isalpha(c) || c >= 0x80; }
bool is_digit(unsigned char c) { return std::isdigit(c) != 0; }
bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_alnum(unsigned char c) { return is_letter(c) || is_digit(c); }
bool is_handle_char(unsigned char c) { return std::isalnum(c) || c == '_'; }

constexpr std::array<std::string_view, 17> kEmoticons = {
    ":-)", ":-(", ":-d", ":-p", ":'(", ":)", ":(", ":d", ":p",
    ";-)", ";)",  "<3",  ":o",  ":/",  ":|", "=)", "=(",
};

bool starts_with_ci(std::string_view text, std::size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) != prefix[i]) return false;
  }
  return true;
}

bool boundary_at(std::string_view text, std::size_t pos) {
  return pos >= text.size() || is_space(static_cast<unsigned char>(text[pos]));
}

std::size_t match_emoticon(std::string_view text, std::size_t pos) {
  std::size_t best = 0;
  for (auto e : kEmoticons) {
    if (e.size() > best && starts_with_ci(text, pos, e) && boundary_at(text, pos + e.size())) {
      best = e.size();
    }
  }
  return best;
}

std::size_t match_placeholder(std::string_view text, std::size_t pos) {
  for (std::string_view p : {std::string_view("<url>"), std::string_view("<user>")}) {
    if (starts_with_ci(text, pos, p)) return p.size();
  }
  return 0;
}

std::size_t match_url(std::string_view text, std::size_t pos) {
  if (starts_with_ci(text, pos, "http://") || starts_with_ci(text, pos, "https://") ||
      starts_with_ci(text, pos, "www.")) {
    std::size_t end = pos;
    while (end < text.size() && !is_space(static_cast<unsigned char>(text[end]))) ++end;
    return end - pos;
  }
  return 0;
}

std::size_t match_handle(std::string_view text, std::size_t pos) {
  std::size_t name_start = 0;
  if (text[pos] == '@') {
    name_start = pos + 1;
  } else if (starts_with_ci(text, pos, "/u/")) {
    name_start = pos + 3;
  } else if (starts_with_ci(text, pos, "u/") &&
             (pos == 0 || is_space(static_cast<unsigned char>(text[pos - 1])))) {
    name_start = pos + 2;
  } else {
    return 0;
  }
  std::size_t end = name_start;
  while (end < text.size() &&
         (is_handle_char(static_cast<unsigned char>(text[end])) || text[end] == '-')) {
    ++end;
  }
  return end > name_start ? end - pos : 0;
}

std::string lower_ascii(std::string_view s) { return csv::to_lower(s); }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](std::string surface, TokenKind kind, std::size_t start, std::size_t len) {
    out.push_back(Token{std::move(surface), kind, start, len});
  };
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (std::size_t len = match_placeholder(text, i)) {
      push(lower_ascii(text.substr(i, len)), TokenKind::kWord, i, len);
      i += len;
      continue;
    }
    if (std::size_t len = match_url(text, i)) {
      push("<url>", TokenKind::kWord, i, len);
      i += len;
      continue;
    }
    if (std::size_t len = match_handle(text, i)) {
      push("<user>", TokenKind::kWord, i, len);
      i += len;
      continue;
    }
    if (std::size_t len = match_emoticon(text, i)) {
      push(lower_ascii(text.substr(i, len)), TokenKind::kEmoticon, i, len);
      i += len;
      continue;
    }
    if (is_alnum(c)) {
      std::size_t end = i;
      bool has_letter = false;
      while (end < n) {
        unsigned char ch = static_cast<unsigned char>(text[end]);
        if (is_alnum(ch)) {
          has_letter = has_letter || is_letter(ch);
          ++end;
          continue;
        }
        bool inner = end + 1 < n && end > i;
        if (!inner) break;
        unsigned char prev = static_cast<unsigned char>(text[end - 1]);
        unsigned char next = static_cast<unsigned char>(text[end + 1]);
        if ((ch == '\'' || ch == '-') && is_alnum(prev) && is_alnum(next)) {
          end += 2;
          has_letter = has_letter || is_letter(next);
          continue;
        }
        if ((ch == '.' || ch == ',') && is_digit(prev) && is_digit(next)) {
          end += 2;
          continue;
        }
        break;
      }
      push(lower_ascii(text.substr(i, end - i)), has_letter ? TokenKind::kWord : TokenKind::kNumber,
           i, end - i);
      i = end;
      continue;
    }
    // Punctuation run.
    std::size_t end = i + 1;
    while (end < n) {
      unsigned char ch = static_cast<unsigned char>(text[end]);
      if (is_space(ch) || is_alnum(ch)) break;
      if (match_placeholder(text, end) || match_handle(text, end)) break;
      ++end;
    }
    push(std::string(text.substr(i, end - i)), TokenKind::kPunctuation, i, end - i);
    i = end;
  }
  return out;
}

Sentence make_sentence(std::string text, std::size_t index) {
  Sentence s;
  s.text = std::move(text);
  s.index_in_text = index;
  bool has_word = std::any_of(s.text.begin(), s.text.end(),
                              [](char c) { return is_alnum(static_cast<unsigned char>(c)); });
  if (has_word) s.tokens = tokenize(s.text);
  return s;
}

const TextRules& TextRules::builtin() {
  static const TextRules rules = [] {
    TextRules r;
    r.abbreviations = {"mr", "mrs", "dr", "st", "vs", "e.g", "i.e", "etc"};
    r.pronouns = {"i",   "me",   "my",    "mine",   "myself",   "we",       "us",        "our",
                  "ours", "ourselves", "you", "your", "yours", "yourself", "yourselves"};
    return r;
  }();
  return rules;
}

namespace {
std::set<std::string, std::less<>> read_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::set<std::string, std::less<>> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = csv::to_lower(csv::trim(line));
    if (t.empty() || t[0] == '#') continue;
    out.insert(std::move(t));
  }
  return out;
}
}  // namespace

TextRules TextRules::load(const std::filesystem::path& dir) {
  TextRules r;
  r.abbreviations = read_list(dir / "abbreviations.txt");
  r.pronouns = read_list(dir / "pronouns.txt");
  return r;
}

std::vector<Sentence> split_sentences(std::string_view text, const TextRules& rules) {
  std::vector<Sentence> out;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string piece = csv::trim(text.substr(begin, end - begin));
    if (piece.empty()) return;
    out.push_back(make_sentence(std::move(piece), out.size()));
  };
  auto is_abbreviation = [&](std::size_t dot) {
    std::size_t b = dot;
    while (b > 0 && !is_space(static_cast<unsigned char>(text[b - 1]))) --b;
    std::string word = csv::to_lower(text.substr(b, dot - b));
    while (!word.empty() && !is_alnum(static_cast<unsigned char>(word.front()))) {
      word.erase(word.begin());
    }
    return !word.empty() && rules.abbreviations.count(word) > 0;
  };

  std::size_t start = 0;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == '\n') {
      emit(start, i);
      start = ++i;
      continue;
    }
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?')) ++j;
    std::size_t k = j;
    while (k < n && (text[k] == '"' || text[k] == '\'' || text[k] == ')' || text[k] == ']')) ++k;
    bool at_break = k == n || is_space(static_cast<unsigned char>(text[k]));
    bool abbreviation = j == i + 1 && c == '.' && is_abbreviation(i);
    if (at_break && !abbreviation) {
      emit(start, k);
      start = k;
    }
    i = k;
  }
  emit(start, n);
  return out;
}

std::size_t word_count(const std::vector<Token>& tokens) {
  return static_cast<std::size_t>(std::count_if(tokens.begin(), tokens.end(), is_wordlike));
}

bool is_conversational(const Sentence& sentence, const TextRules& rules) {
  return std::any_of(sentence.tokens.begin(), sentence.tokens.end(), [&](const Token& t) {
    return t.kind == TokenKind::kWord && rules.pronouns.count(t.surface) > 0;
  });
}

std::vector<Passage> build_passages(std::string_view text, std::size_t min_len,
                                    std::size_t max_len, const TextRules& rules) {
  auto sentences = split_sentences(text, rules);
  std::vector<Passage> out;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const Sentence& s = sentences[i];
    std::size_t words = word_count(s.tokens);
    if (words < min_len || words > max_len || !is_conversational(s, rules)) continue;
    Passage p{s, std::nullopt, std::nullopt};
    if (i > 0) p.before = sentences[i - 1];
    if (i + 1 < sentences.size()) p.after = sentences[i + 1];
    out.push_back(std::move(p));
  }
  return out;
}

std::string join_tokens(const std::vector<Token>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t.surface;
  }
  return out;
}

}  // namespace socdim

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "socdim/embeddings.hpp"
#include "socdim/error.hpp"
#include "socdim/random.hpp"

using namespace socdim;

namespace {

EmbeddingStore store_of(const std::string& body, std::size_t dim, EmbeddingLoadReport* r = nullptr) {
  std::istringstream in(body);
  return parse_embeddings(in, dim, r);
}

std::vector<Token> words(std::initializer_list<const char*> ws) {
  std::vector<Token> out;
  for (const char* w : ws) out.push_back({w, TokenKind::kWord});
  return out;
}

}  // namespace

TEST(LoadEmbeddings, TwoLines) {
  EmbeddingLoadReport r;
  auto s = store_of("a 1 2 3\nb 4 5 6\n", 3, &r);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(r.lines, 2u);
  EXPECT_EQ(s.find("b")[2], 6.0f);
}

TEST(LoadEmbeddings, HeaderSkippedDuplicatesKeepFirst) {
  EmbeddingLoadReport r;
  auto s = store_of("2 2\na 1 2\na 9 9\n", 2, &r);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(s.find("a")[0], 1.0f);
  EXPECT_EQ(r.duplicates, 1u);
}

TEST(LoadEmbeddings, ShortLineSkippedAndCounted) {
  std::string body;
  for (int i = 0; i < 200; ++i) body += "w" + std::to_string(i) + " 1 2 3\n";
  body += "bad 1 2\n";
  EmbeddingLoadReport r;
  auto s = store_of(body, 3, &r);
  EXPECT_EQ(s.size(), 200u);
  EXPECT_EQ(r.skipped, 1u);
  EXPECT_FALSE(s.contains("bad"));
}

TEST(LoadEmbeddings, TooManySkippedOrEmptyIsFatal) {
  EXPECT_THROW(store_of("a 1 2 3\nb 1 2\n", 3), FormatError);
  EXPECT_THROW(store_of("", 3), FormatError);
}

TEST(SentenceVector, MeanAndIdentity) {
  auto s = store_of("a 1 0\nb 0 1\n", 2);
  EXPECT_EQ(sentence_vector(words({"a", "b"}), s), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(sentence_vector(words({"b", "a"}), s), (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(sentence_vector(words({"a"}), s), (std::vector<double>{1.0, 0.0}));
}

TEST(SentenceVector, OovSkippedNotZeroed) {
  auto s = store_of("a 2 4\n", 2);
  EXPECT_EQ(sentence_vector(words({"a", "zzz"}), s), (std::vector<double>{2.0, 4.0}));
  EXPECT_THROW(sentence_vector(words({"zzz"}), s), NoVectorError);
}

TEST(Anchor, MeanOfInVocabularyKeywords) {
  auto s = store_of("funny 1 3\nhumor 3 5\ntable 9 9\n", 2);
  auto a = anchor_vector(Dimension::kFun, s);
  EXPECT_EQ(a.vector, (std::vector<double>{2.0, 4.0}));
  EXPECT_EQ(a.keywords, (std::vector<std::string>{"funny", "humor"}));
  auto single = anchor_vector(Dimension::kFun, {"humor", "nope"}, s);
  EXPECT_EQ(single.vector, (std::vector<double>{3.0, 5.0}));
}

TEST(Anchor, AllOovNamesDimension) {
  auto s = store_of("table 1 1\n", 2);
  try {
    anchor_vector(Dimension::kRomance, s);
    FAIL();
  } catch (const NoVectorError& e) {
    EXPECT_NE(std::string(e.what()).find("romance"), std::string::npos);
  }
}

TEST(Distance, HandArithmeticAndZero) {
  std::vector<double> a{0, 0}, b{3, 4};
  EXPECT_DOUBLE_EQ(euclidean(a, b), 5.0);
  auto s = store_of("funny 1 3\nhumor 3 5\n", 2);
  auto anchor = anchor_vector(Dimension::kFun, s);
  EXPECT_DOUBLE_EQ(distance_score(make_sentence("funny humor"), anchor, s), 0.0);
  EXPECT_DOUBLE_EQ(pseudo_confidence(0.0), 1.0);
  EXPECT_THROW(distance_score(make_sentence("nothing here"), anchor, s), NoVectorError);
}

TEST(Distance, TriangleInequality) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x(5), y(5), z(5);
    for (int j = 0; j < 5; ++j) {
      x[j] = rng.normal();
      y[j] = rng.normal();
      z[j] = rng.normal();
    }
    EXPECT_LE(euclidean(x, z), euclidean(x, y) + euclidean(y, z) + 1e-12);
  }
}

TEST(Distance, RankingInvariantUnderRotation) {
  // Random orthogonal 3x3 from Gram-Schmidt on Gaussian columns.
  Rng rng(8);
  double q[3][3];
  for (auto& col : q) {
    for (double& v : col) v = rng.normal();
  }
  for (int c = 0; c < 3; ++c) {
    for (int p = 0; p < c; ++p) {
      double d = 0;
      for (int k = 0; k < 3; ++k) d += q[c][k] * q[p][k];
      for (int k = 0; k < 3; ++k) q[c][k] -= d * q[p][k];
    }
    double n = 0;
    for (int k = 0; k < 3; ++k) n += q[c][k] * q[c][k];
    for (int k = 0; k < 3; ++k) q[c][k] /= std::sqrt(n);
  }
  std::vector<std::string> vocab = {"funny", "humor", "w1", "w2", "w3", "w4", "w5", "w6"};
  std::string plain, rotated;
  for (const auto& w : vocab) {
    double v[3] = {rng.normal(), rng.normal(), rng.normal()};
    plain += w;
    rotated += w;
    for (int r = 0; r < 3; ++r) {
      plain += " " + std::to_string(v[r]);
      double rv = 0;
      for (int k = 0; k < 3; ++k) rv += q[k][r] * v[k];
      rotated += " " + std::to_string(rv);
    }
    plain += "\n";
    rotated += "\n";
  }
  auto s1 = store_of(plain, 3), s2 = store_of(rotated, 3);
  auto a1 = anchor_vector(Dimension::kFun, s1), a2 = anchor_vector(Dimension::kFun, s2);
  std::vector<std::string> texts = {"w1 w2", "w3", "w4 w5 w6", "w1 funny", "w6", "humor w2"};
  std::vector<double> d1, d2;
  for (const auto& t : texts) {
    d1.push_back(distance_score(make_sentence(t), a1, s1));
    d2.push_back(distance_score(make_sentence(t), a2, s2));
  }
  for (std::size_t i = 0; i < texts.size(); ++i) {
    for (std::size_t j = 0; j < texts.size(); ++j) {
      if (std::fabs(d1[i] - d1[j]) > 1e-4) EXPECT_EQ(d1[i] < d1[j], d2[i] < d2[j]);
    }
  }
}

TEST(Cosine, Diagnostic) {
  std::vector<double> a{1, 0}, b{0, 2}, c{2, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), 1.0);
}

#include <gtest/gtest.h>

#include <sstream>

#include "socdim/config.hpp"
#include "socdim/error.hpp"
#include "synthetic.hpp"

using namespace socdim;

namespace {

RunConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return parse_run_config(in, base);
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const InvalidArgument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ConfigTable, ValueTypes) {
  std::istringstream in(
      "top = 1\n[a]\ns = \"x # y\" # comment\nn = -2.5\nb = true\nl = [\"p\", q, 3]\n");
  auto t = parse_config_table(in);
  EXPECT_EQ(std::get<double>(t.at("top")), 1.0);
  EXPECT_EQ(std::get<std::string>(t.at("a.s")), "x # y");
  EXPECT_EQ(std::get<double>(t.at("a.n")), -2.5);
  EXPECT_EQ(std::get<bool>(t.at("a.b")), true);
  EXPECT_EQ(std::get<std::vector<std::string>>(t.at("a.l")),
            (std::vector<std::string>{"p", "q", "3"}));
}

TEST(ConfigTable, SyntaxErrorsCarryLine) {
  std::istringstream in("[a]\nkey\n");
  try {
    parse_config_table(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream dup("a = 1\na = 2\n");
  EXPECT_THROW(parse_config_table(dup), ParseError);
}

TEST(RunConfig, DefaultsWhenEmpty) {
  auto c = parse("");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.folds, 10u);
  EXPECT_EQ(c.quorum, 2u);
  EXPECT_DOUBLE_EQ(c.threshold, 0.95);
  EXPECT_EQ(c.min_messages, 20u);
  EXPECT_EQ(c.dimensions.size(), 10u);
  EXPECT_EQ(c.ngrams.k, 100u);
}

TEST(RunConfig, FullFile) {
  auto c = parse(R"(seed = 7
workers = 2
[paths]
corpus = "corpus.jsonl"
corpus_format = "email_dir"
models_dir = "/abs/models"
census = ["a.csv", "b.csv"]
[features]
ngram_k = 20
min_count = 3
sentiment = false
[learn]
models = ["logreg"]
folds = 5
logreg_epochs = [50, 100]
gbdt_max_depth = [3]
[analytics]
dimensions = ["fun", "conflict"]
standardize = false
)",
                 "/base");
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_EQ(c.corpus, std::filesystem::path("/base/corpus.jsonl"));
  EXPECT_EQ(c.models_dir, std::filesystem::path("/abs/models"));
  EXPECT_EQ(c.census.size(), 2u);
  EXPECT_EQ(c.census[1], std::filesystem::path("/base/b.csv"));
  EXPECT_EQ(c.features.ngram_k, 20u);
  EXPECT_EQ(c.ngrams.k, 20u);
  EXPECT_EQ(c.ngrams.min_count, 3u);
  EXPECT_FALSE(c.features.sentiment);
  EXPECT_EQ(c.models, std::vector<ModelKind>{ModelKind::kLogreg});
  EXPECT_EQ(c.folds, 5u);
  EXPECT_EQ(c.grids.logreg.epochs, (std::vector<std::size_t>{50, 100}));
  EXPECT_EQ(c.grids.gbdt.max_depth, std::vector<std::size_t>{3});
  EXPECT_EQ(c.dimensions, (std::vector<Dimension>{Dimension::kFun, Dimension::kConflict}));
  EXPECT_FALSE(c.standardize);
}

TEST(RunConfig, ErrorsReportedTogether) {
  auto msg = error_of("bogus = 1\n[learn]\nfolds = 2\nmodels = [\"svm\"]\n[analytics]\nthreshold = 3\n");
  EXPECT_NE(msg.find("bogus"), std::string::npos);
  EXPECT_NE(msg.find("learn.folds"), std::string::npos);
  EXPECT_NE(msg.find("svm"), std::string::npos);
  EXPECT_NE(msg.find("analytics.threshold"), std::string::npos);
}

TEST(RunConfig, TypeMismatchRejected) {
  EXPECT_NE(error_of("seed = \"abc\"\n").find("seed"), std::string::npos);
  EXPECT_NE(error_of("[features]\nstyle = 3\n").find("features.style"), std::string::npos);
  EXPECT_NE(error_of("[learn]\nfolds = 3.5\n").find("learn.folds"), std::string::npos);
  EXPECT_NE(error_of("[paths]\ncorpus_format = \"fax\"\n").find("corpus_format"),
            std::string::npos);
}

TEST(RunConfig, LoadResolvesAgainstFileDirectory) {
  auto dir = synth::temp_dir("config");
  synth::write_file(dir / "run.toml", "[paths]\nannotations = \"ann.csv\"\n");
  auto c = load_run_config(dir / "run.toml");
  EXPECT_EQ(c.annotations, dir / "ann.csv");
  EXPECT_THROW(load_run_config(dir / "missing.toml"), IoError);
}

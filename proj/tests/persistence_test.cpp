#include <gtest/gtest.h>

#include <filesystem>

#include "fixtures.hpp"
#include "igape/csv.hpp"
#include "igape/error.hpp"
#include "igape/persistence.hpp"

using namespace igape;
using igape::testing::data_path;
using igape::testing::payment_document;
using igape::testing::TempDir;

namespace {

template <typename F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorKind::Reference, "<no error>", "");
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(LoadModel, BundledFixtureParsesAndValidates) {
  const auto& doc = payment_document();
  EXPECT_EQ(doc.format_version, "1.0.0");
  EXPECT_FALSE(doc.comments.empty());
  EXPECT_FALSE(validate_model(doc.model).has_errors());
  EXPECT_EQ(doc.hierarchies.size(), 2u);
  EXPECT_EQ(doc.scenarios.size(), 2u);
}

TEST(LoadModel, EmptyFileIsSyntaxErrorAtPositionZero) {
  TempDir dir;
  write_file(dir / "empty.igape.json", "");
  const auto e = error_of([&] { load_model(dir / "empty.igape.json"); });
  EXPECT_EQ(e.kind(), ErrorKind::Parse);
  EXPECT_EQ(e.rule(), "document.syntax");
  EXPECT_TRUE(contains(e.message(), "(position 0)")) << e.message();
  EXPECT_TRUE(contains(e.message(), "empty.igape.json")) << e.message();
}

TEST(ParseDocument, SyntaxErrorReportsLineAndColumn) {
  const auto e = error_of([] { parse_document("{\n  \"format_version\": \"1.0.0\",\n  oops\n}"); });
  EXPECT_EQ(e.rule(), "document.syntax");
  EXPECT_TRUE(contains(e.message(), "line 3, column 3")) << e.message();
}

TEST(ParseDocument, UnknownVersionIsRejected) {
  auto e = error_of([] { parse_document(R"({"format_version": "99.0.0", "model": {}})"); });
  EXPECT_EQ(e.kind(), ErrorKind::Version);
  EXPECT_TRUE(contains(e.message(), "99.0.0"));
  e = error_of([] { parse_document(R"({"model": {}})"); });
  EXPECT_EQ(e.kind(), ErrorKind::Version);
}

TEST(ParseDocument, SchemaErrors) {
  EXPECT_EQ(error_of([] { parse_document("[1]"); }).rule(), "document.schema");
  EXPECT_EQ(error_of([] { parse_document(R"({"format_version": "1.0.0"})"); }).rule(), "document.schema");
  auto e = error_of([] {
    parse_document(R"({"format_version": "1.0.0", "model": {"goals": [{"id": "g", "name": "G", "kind": "wish"}]}})");
  });
  EXPECT_EQ(e.kind(), ErrorKind::Parse);
  EXPECT_TRUE(contains(e.message(), "wish")) << e.message();
}

TEST(ParseDocument, ScenarioErrorsNameTheScenario) {
  const auto e = error_of([] {
    parse_document(R"({"format_version": "1.0.0", "model": {}, "scenarios": {"bad": {"kind": "guess"}}})");
  });
  EXPECT_TRUE(contains(e.message(), "scenario 'bad'")) << e.message();
}

TEST(ModelDocument, UnknownScenarioAndHierarchy) {
  EXPECT_EQ(error_of([] { payment_document().scenario("nope"); }).rule(), "scenario.unknown");
  EXPECT_EQ(error_of([] { payment_document().hierarchy("nope"); }).kind(), ErrorKind::Reference);
}

TEST(SaveModel, RoundTripIsIdentity) {
  TempDir dir;
  const auto& doc = payment_document();
  save_model(doc, dir / "copy.igape.json");
  const auto back = load_model(dir / "copy.igape.json");
  EXPECT_EQ(back, doc);
  EXPECT_EQ(read_file(dir / "copy.igape.json"), serialize_document(doc));
  EXPECT_FALSE(std::filesystem::exists(dir / "copy.igape.json.tmp"));
}

TEST(SaveModel, FixtureFileIsInCanonicalForm) {
  EXPECT_EQ(serialize_document(payment_document()), read_file(data_path("payment.igape.json")));
}

TEST(SerializeDocument, KeyOrderAndTrailingNewline) {
  const auto text = serialize_document(payment_document());
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  const auto v = text.find("\"format_version\"");
  const auto c = text.find("\"comments\"");
  const auto m = text.find("\"model\"");
  const auto h = text.find("\"hierarchies\"");
  const auto s = text.find("\"scenarios\"");
  EXPECT_LT(v, c);
  EXPECT_LT(c, m);
  EXPECT_LT(m, h);
  EXPECT_LT(h, s);
}

TEST(SerializeDocument, NumbersUseShortestRoundTripForm) {
  ModelDocument doc;
  doc.hierarchies["h"] =
      CriteriaHierarchy{{"r", GivenWeights{PriorityVector{{0.1, 0.2, 0.7}}}, {{"a", {}, {}}, {"b", {}, {}}, {"c", {}, {}}}}};
  const auto text = serialize_document(doc);
  EXPECT_TRUE(contains(text, "0.1,") || contains(text, "0.1\n")) << text;
  EXPECT_FALSE(contains(text, "0.10000"));
  EXPECT_EQ(parse_document(text), doc);
}

TEST(Files, MissingFileIsIoError) {
  const auto e = error_of([] { load_model("/nonexistent/dir/model.json"); });
  EXPECT_EQ(e.kind(), ErrorKind::Io);
  EXPECT_EQ(e.rule(), "io.read");
  EXPECT_TRUE(e.is_input_error());
  EXPECT_EQ(error_of([] { write_file("/nonexistent/dir/out.json", "x"); }).rule(), "io.write");
}

TEST(RankImport, PanelMatrixHasSevenJudgesFourAlternatives) {
  const auto m = import_rank_matrix(data_path("panel-ranks.csv"));
  EXPECT_EQ(m.k(), 7u);
  EXPECT_EQ(m.n(), 4u);
  EXPECT_EQ(m.judges.front(), "Our method");
  EXPECT_EQ(m.alternatives, (std::vector<std::string>{"A1", "A2", "A3", "A4"}));
  EXPECT_EQ(m.at(0, 1), 3);
  EXPECT_NO_THROW(m.check());
}

TEST(RankImport, RowLevelErrorsNameTheRow) {
  auto e = error_of([] { parse_rank_matrix("judge,a,b,c\nJ1,1,2,3\nJ2,1,1,3\n"); });
  EXPECT_EQ(e.kind(), ErrorKind::RankValidity);
  EXPECT_TRUE(contains(e.message(), "row 2 ('J2')")) << e.message();

  e = error_of([] { parse_rank_matrix("judge,a,b\nJ1,1,5\n"); });
  EXPECT_EQ(e.rule(), "concordance.rank-range");
  EXPECT_TRUE(contains(e.message(), "row 1"));

  e = error_of([] { parse_rank_matrix("judge,a,b\n\nJ1,1\n"); });
  EXPECT_EQ(e.rule(), "csv.row");
  EXPECT_TRUE(contains(e.message(), "row 1 (line 3)")) << e.message();

  e = error_of([] { parse_rank_matrix("judge,a,b\nJ1,1,x\n"); });
  EXPECT_EQ(e.rule(), "csv.row");
  EXPECT_TRUE(contains(e.message(), "'x'"));

  EXPECT_EQ(error_of([] { parse_rank_matrix(""); }).rule(), "csv.header");
  EXPECT_EQ(error_of([] { parse_rank_matrix("expert,a,b\n"); }).rule(), "csv.header");
}

TEST(RankImport, QuotedLabels) {
  const auto m = parse_rank_matrix("judge,\"Option, D\",B\n\"Expert \"\"1\"\"\",2,1\n");
  EXPECT_EQ(m.alternatives[0], "Option, D");
  EXPECT_EQ(m.judges[0], "Expert \"1\"");
}

TEST(DecisionImport, SupportMatrix) {
  const auto m = import_decision_matrix(data_path("support-matrix.csv"));
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 5u);
  EXPECT_EQ(m.criteria[4].direction, Direction::Benefit);
  EXPECT_EQ(m.criteria[0].direction, Direction::Cost);
  EXPECT_EQ(m.criteria[3].weight, 0.350);
  EXPECT_EQ(m.at(1, 2), 3000);
  EXPECT_NO_THROW(m.check());
}

TEST(DecisionImport, Errors) {
  EXPECT_EQ(error_of([] { parse_decision_matrix("alternative,c\n"); }).rule(), "csv.header");
  auto e = error_of([] { parse_decision_matrix("alternative,c\ndirection,up\nweight,1\nx,1\n"); });
  EXPECT_EQ(e.rule(), "csv.row");
  EXPECT_TRUE(contains(e.message(), "'up'"));
  e = error_of([] { parse_decision_matrix("alternative,c\ndirection,cost\nweight,1\nx,1,2\n"); });
  EXPECT_TRUE(contains(e.message(), "row 3 (line 4)")) << e.message();
}

TEST(Csv, ParseEscapeJoin) {
  const auto rows = csv::parse(" a , \"b,c\" \n\n\"multi\nline\",d\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].fields, (std::vector<std::string>{"a", "b,c"}));
  EXPECT_EQ(rows[1].line, 3u);
  EXPECT_EQ(rows[1].fields[0], "multi\nline");
  EXPECT_EQ(csv::join({"x", "y,z", "q\"r"}), "x,\"y,z\",\"q\"\"r\"");
  EXPECT_EQ(csv::escape("plain"), "plain");
  EXPECT_EQ(error_of([] { csv::parse("\"open"); }).rule(), "csv.quote");
}

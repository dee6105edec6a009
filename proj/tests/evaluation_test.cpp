#include "hnsir/evaluation.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace hnsir {
namespace {

TEST(Evaluate, Definitions) {
  const Qrels qrels{{"q1", {{"a", 1}, {"b", 1}}}, {"q2", {{"x", 1}}}, {"q3", {{"r", 1}, {"s", 1}}}};
  const Runs runs{{"q1", {"a", "b", "c"}}, {"q2", {"y", "z"}}, {"q3", {"r", "n"}}};
  const auto report = evaluate(runs, qrels, 2);
  ASSERT_EQ(report.per_query.size(), 3u);
  EXPECT_EQ(report.per_query[0].precision, 1.0);
  EXPECT_EQ(report.per_query[0].recall, 1.0);
  EXPECT_EQ(report.per_query[1].precision, 0.0);
  EXPECT_EQ(report.per_query[1].recall, 0.0);
  EXPECT_EQ(report.per_query[2].precision, 0.5);
  EXPECT_EQ(report.per_query[2].recall, 0.5);
  EXPECT_DOUBLE_EQ(report.macro_precision, 0.5);
  EXPECT_DOUBLE_EQ(report.macro_recall, 0.5);
}

TEST(Evaluate, UnjudgedDocumentsAreNonRelevantAndShortRunsDivideByK) {
  const Qrels qrels{{"q", {{"a", 1}, {"b", 0}}}};
  const auto report = evaluate(Runs{{"q", {"b", "a"}}}, qrels, 4);
  EXPECT_EQ(report.per_query[0].precision, 0.25);
  EXPECT_EQ(report.per_query[0].recall, 1.0);
}

TEST(Evaluate, Errors) {
  EXPECT_THROW(evaluate(Runs{{"q", {}}}, Qrels{}, 1), EvaluationError);
  EXPECT_THROW(evaluate(Runs{}, Qrels{}, 0), EvaluationError);
}

TEST(ParseQrels, Format) {
  std::istringstream in("q1\td1\t1\nq1\td2\t0\r\n\nq2\td1\t1\n");
  const auto qrels = parse_qrels(in);
  EXPECT_EQ(qrels.at("q1").at("d1"), 1);
  EXPECT_EQ(qrels.at("q1").at("d2"), 0);
  std::istringstream bad("q1\td1\t2\n");
  EXPECT_THROW(parse_qrels(bad), EvaluationError);
  std::istringstream short_line("q1\td1\n");
  EXPECT_THROW(parse_qrels(short_line), EvaluationError);
}

TEST(ParseQueries, Format) {
  std::istringstream in("q1\tapple -banana\nq2\t0.5:x~\n");
  const auto qs = parse_queries(in);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].second, "apple -banana");
  std::istringstream dup("q\ta\nq\tb\n");
  EXPECT_THROW(parse_queries(dup), EvaluationError);
  std::istringstream missing("no tab here\n");
  EXPECT_THROW(parse_queries(missing), EvaluationError);
}

}  // namespace
}  // namespace hnsir

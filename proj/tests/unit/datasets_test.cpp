#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "dilp/datasets.hpp"
#include "dilp/entailment.hpp"
#include "dilp/problem_io.hpp"
#include "dilp/text.hpp"

namespace dilp {
namespace {

class TaskTest : public ::testing::TestWithParam<Task> {};

TEST_P(TaskTest, ExamplesAgreeWithReferenceProgram) {
  const Task task = GetParam();
  const Problem q = generate({task, 20, 0, 3});
  const auto program = ground_truth_program(task);
  const ProofConfig proof{task_inference_steps(task)};
  for (const Atom& e : q.positives) {
    EXPECT_TRUE(entails(program, q.background, e, proof)) << to_string(e);
  }
  // Negatives are checked at a generous depth so a deeper proof would show.
  const ProofConfig deep{task_inference_steps(task) + 6};
  for (const Atom& e : q.negatives) {
    EXPECT_FALSE(entails(program, q.background, e, deep)) << to_string(e);
  }
}

TEST_P(TaskTest, BalancedDistinctAndDisjointFromBackground) {
  const Problem q = generate({GetParam(), 25, 0, 1});
  EXPECT_EQ(q.positives.size(), 25u);
  EXPECT_EQ(q.negatives.size(), 25u);
  std::set<Atom> seen(q.positives.begin(), q.positives.end());
  seen.insert(q.negatives.begin(), q.negatives.end());
  EXPECT_EQ(seen.size(), 50u);
  for (const Atom& b : q.background) EXPECT_EQ(seen.count(b), 0u) << to_string(b);
  for (const Atom& e : seen) EXPECT_TRUE(e.is_ground());
}

TEST_P(TaskTest, DeterministicPerSeed) {
  const Problem a = generate({GetParam(), 10, 0, 4});
  const Problem b = generate({GetParam(), 10, 0, 4});
  const Problem c = generate({GetParam(), 10, 0, 5});
  EXPECT_EQ(format_problem(a), format_problem(b));
  EXPECT_NE(format_problem(a), format_problem(c));
}

TEST_P(TaskTest, ProblemTextRoundTrips) {
  const Problem q = generate({GetParam(), 10, 0, 2});
  const std::string text = format_problem(q);
  const Problem back = parse_problem(text);
  EXPECT_EQ(format_problem(back), text);
  EXPECT_EQ(problem_hash(back), problem_hash(q));
  EXPECT_EQ(back.positives, q.positives);
  EXPECT_EQ(back.negatives, q.negatives);
  EXPECT_EQ(back.initial_clauses, q.initial_clauses);
}

TEST_P(TaskTest, ZeroExamples) {
  const Problem q = generate({GetParam(), 0, 0, 0});
  EXPECT_EQ(q.example_count(), 0u);
  EXPECT_FALSE(q.initial_clauses.empty());
}

INSTANTIATE_TEST_SUITE_P(AllTasks, TaskTest, ::testing::ValuesIn(all_tasks()),
                         [](const auto& info) { return std::string(task_name(info.param)); });

TEST(TaskNameTest, RoundTrips) {
  for (Task t : all_tasks()) EXPECT_EQ(parse_task(task_name(t)), t);
  EXPECT_FALSE(parse_task("reverse").has_value());
}

TEST(GenerateTest, ImpossibleCapThrows) {
  EXPECT_THROW(generate({Task::kPlus, 200, 2, 0}), std::runtime_error);
}

TEST(NoiseTest, ZeroIsIdentity) {
  const Problem q = generate({Task::kMember, 50, 0, 0});
  const Problem n = inject_noise(q, 0.0, 3);
  EXPECT_EQ(n.positives, q.positives);
  EXPECT_EQ(n.negatives, q.negatives);
}

TEST(NoiseTest, FlipsRequestedCount) {
  const Problem q = generate({Task::kMember, 50, 0, 0});
  const Problem n = inject_noise(q, 0.5, 3);
  const std::set<Atom> pos(q.positives.begin(), q.positives.end());
  std::size_t flipped = 0;
  for (const Atom& e : n.negatives) flipped += pos.count(e);
  const std::set<Atom> neg(q.negatives.begin(), q.negatives.end());
  for (const Atom& e : n.positives) flipped += neg.count(e);
  EXPECT_EQ(flipped, 50u);
  EXPECT_EQ(n.example_count(), 100u);
}

TEST(NoiseTest, SmallFractionRoundsDown) {
  const Problem q = generate({Task::kMember, 10, 0, 0});
  const Problem n = inject_noise(q, 0.07, 3);  // floor(1.4) = 1
  const std::set<Atom> pos(q.positives.begin(), q.positives.end());
  std::size_t moved = 0;
  for (const Atom& e : n.negatives) moved += pos.count(e);
  for (const Atom& e : n.positives) moved += 1 - pos.count(e);
  EXPECT_EQ(moved, 1u);
}

TEST(NoiseTest, ApplyingTwiceRestores) {
  const Problem q = generate({Task::kDelete, 20, 0, 1});
  const Problem twice = inject_noise(inject_noise(q, 0.3, 9), 0.3, 9);
  const std::set<Atom> a(q.positives.begin(), q.positives.end());
  const std::set<Atom> b(twice.positives.begin(), twice.positives.end());
  EXPECT_EQ(a, b);
}

TEST(SplitTest, StratifiedAndDisjoint) {
  const Problem q = generate({Task::kMember, 50, 0, 0});
  const Split s = split(q, 0.7, 11);
  EXPECT_EQ(s.train.positives.size(), 35u);
  EXPECT_EQ(s.train.negatives.size(), 35u);
  EXPECT_EQ(s.test.size(), 30u);
  std::set<Atom> all(s.train.positives.begin(), s.train.positives.end());
  all.insert(s.train.negatives.begin(), s.train.negatives.end());
  for (const auto& ex : s.test) EXPECT_TRUE(all.insert(ex.atom).second);
  std::set<Atom> orig(q.positives.begin(), q.positives.end());
  orig.insert(q.negatives.begin(), q.negatives.end());
  EXPECT_EQ(all, orig);
  EXPECT_EQ(s.train.background, q.background);
  EXPECT_EQ(s.train.initial_clauses, q.initial_clauses);
}

TEST(ProblemIoTest, ArityErrorNamesLine) {
  const std::string text =
      "pred p/2.\nconst a.\n# comment\npos p(a).\n";
  try {
    parse_problem(text);
    FAIL() << "expected ProblemFormatError";
  } catch (const ProblemFormatError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_EQ(std::string(e.what()).rfind("line 4:", 0), 0u) << e.what();
  }
}

TEST(ProblemIoTest, RejectsUndeclaredAndNonGround) {
  EXPECT_THROW(parse_problem("pred p/1.\npos p(a).\n"), ProblemFormatError);
  EXPECT_THROW(parse_problem("pred p/1.\nconst a.\npos p(x).\n"), ProblemFormatError);
  EXPECT_THROW(parse_problem("pred p/1.\nconst a.\npos p(a)\n"), ProblemFormatError);
  EXPECT_THROW(parse_problem("pred p/1.\nconst a.\nbg true.\n"), ProblemFormatError);
}

TEST(ProblemIoTest, ListSugarIsReEmitted) {
  const Problem q = generate({Task::kMember, 3, 0, 0});
  const std::string text = format_problem(q);
  EXPECT_NE(text.find("pos mem("), std::string::npos) << text;
  EXPECT_NE(text.find(",["), std::string::npos) << text;
  EXPECT_EQ(text.find("f("), std::string::npos) << text;
  Problem q2 = parse_problem(text);
  q2.initial_clauses = ground_truth_program(Task::kMember);
  EXPECT_NE(format_problem(q2).find("init mem(x,[x|y])."), std::string::npos);
}

TEST(ProblemIoTest, MissingFileThrows) {
  EXPECT_THROW(load_problem("/nonexistent/problem.txt"), std::runtime_error);
}

}  // namespace
}  // namespace dilp

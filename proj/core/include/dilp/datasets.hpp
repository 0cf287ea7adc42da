#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dilp/problem.hpp"

namespace dilp {

enum class Task { kMember, kPlus, kAppend, kDelete, kSubtree };

const std::vector<Task>& all_tasks();
std::string_view task_name(Task task);
std::optional<Task> parse_task(std::string_view name);

struct TaskSpec {
  Task task = Task::kMember;
  int examples_per_class = 50;
  /// Structure cap: list length, largest natural, or tree depth. 0 selects
  /// the task default (5, 9, 3).
  int max_size = 0;
  std::uint64_t seed = 0;
};

Language task_language(Task task);
std::vector<Atom> task_background(Task task);
std::vector<Clause> task_seed_clauses(Task task);
/// Reference program the generators label against.
std::vector<Clause> ground_truth_program(Task task);
/// Inference steps used by the task; generated positives are provable within
/// this many clause applications.
int task_inference_steps(Task task);
int default_max_size(Task task);

/// Seeded sampling of `examples_per_class` positives and negatives. Every
/// positive is provable from the reference program and background within
/// task_inference_steps; every negative is false in the intended relation
/// and not provable. Examples are distinct and disjoint from the background.
/// Throws std::runtime_error when the cap leaves too few candidates.
Problem generate(const TaskSpec& spec);

/// Moves floor(fraction * |E|) examples, chosen uniformly, to the opposite
/// class. The choice depends only on the example set and `seed`, so applying
/// it twice with the same seed restores the original sets.
Problem inject_noise(const Problem& q, double fraction, std::uint64_t seed);

struct Split {
  Problem train;
  std::vector<LabeledAtom> test;
};

/// Stratified split: round(fraction * |class|) examples of each class go to
/// the training problem, the rest to `test` (positives first).
Split split(const Problem& q, double fraction, std::uint64_t seed);

}  // namespace dilp

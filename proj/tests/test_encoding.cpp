#include "genopt/encoding.hpp"
#include "genopt/problem.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace genopt;

namespace {

ProblemConfig perm_cfg(int n) {
  ProblemConfig c;
  c.encoding = Encoding::permutation();
  c.d1 = 1;
  c.d2 = n;
  c.n = n;
  c.obj_defs = {{"f", Direction::Minimize, 1.0}};
  return c;
}

Solution single_row(std::initializer_list<int> v) {
  Solution s(1, static_cast<int>(v.size()), 1);
  s.dim2_sizes[0] = static_cast<int>(v.size());
  int i = 0;
  for (int x : v) s.data(0, i++) = x;
  return s;
}

Solution with_objectives(std::initializer_list<double> obj, double penalty = 0.0) {
  Solution s(1, 1, static_cast<int>(obj.size()));
  int i = 0;
  for (double x : obj) s.objectives[i++] = x;
  s.penalty = penalty;
  return s;
}

ProblemConfig two_obj(ComparisonMode mode) {
  ProblemConfig c = perm_cfg(1);
  c.obj_defs = {{"dist", Direction::Minimize, 1.0}, {"veh", Direction::Minimize, 1.0}};
  c.comparison = std::move(mode);
  return c;
}

}  // namespace

TEST(Validate, PermutationExamples) {
  const auto cfg = perm_cfg(3);
  EXPECT_TRUE(validate_solution(single_row({2, 0, 1}), cfg).ok());
  const auto bad = validate_solution(single_row({0, 0, 1}), cfg);
  ASSERT_FALSE(bad.ok());
  EXPECT_EQ(bad.violations.front().rule, "duplicate element 0");
  EXPECT_FALSE(is_valid(single_row({0, 0, 1}), cfg));
  EXPECT_FALSE(is_valid(single_row({0, 3, 1}), cfg));
}

TEST(Validate, PartitionExactCover) {
  ProblemConfig cfg = perm_cfg(3);
  cfg.d1 = 2;
  cfg.row_mode = RowMode::MultiPartition;
  Solution s(2, 3, 1);
  s.data(0, 0) = 0;
  s.data(0, 1) = 2;
  s.data(1, 0) = 1;
  s.dim2_sizes << 2, 1;
  EXPECT_TRUE(validate_solution(s, cfg).ok());
  s.dim2_sizes << 2, 0;  // element 1 missing
  EXPECT_FALSE(validate_solution(s, cfg).ok());
  s.data(1, 0) = 2;
  s.dim2_sizes << 2, 1;  // 2 twice, 1 missing
  EXPECT_FALSE(validate_solution(s, cfg).ok());
}

TEST(Validate, DimensionMismatchIsStructural) {
  const auto cfg = perm_cfg(3);
  Solution s(2, 3, 1);
  EXPECT_THROW(validate_solution(s, cfg), std::invalid_argument);
  EXPECT_FALSE(is_valid(s, cfg));
}

TEST(Validate, BinaryAndIntegerRanges) {
  ProblemConfig cfg = perm_cfg(3);
  cfg.encoding = Encoding::binary();
  EXPECT_TRUE(is_valid(single_row({0, 1, 1}), cfg));
  EXPECT_FALSE(is_valid(single_row({0, 2, 1}), cfg));
  cfg.encoding = Encoding::integer(-1, 4);
  EXPECT_TRUE(is_valid(single_row({-1, 4, 0}), cfg));
  EXPECT_FALSE(is_valid(single_row({-2, 0, 0}), cfg));
  EXPECT_THROW(Encoding::integer(2, 1), std::invalid_argument);
}

TEST(Config, Invariants) {
  ProblemConfig cfg = perm_cfg(3);
  EXPECT_NO_THROW(check_config(cfg));
  cfg.d1 = 2;  // SingleSeq with two rows
  EXPECT_THROW(check_config(cfg), std::invalid_argument);
  cfg = perm_cfg(3);
  cfg.obj_defs.clear();
  EXPECT_THROW(check_config(cfg), std::invalid_argument);
  cfg = perm_cfg(3);
  cfg.comparison = WeightedMode{{1.0, 2.0}};
  EXPECT_THROW(check_config(cfg), std::invalid_argument);
  cfg.comparison = LexicographicMode{{0}, {-1.0}};
  EXPECT_THROW(check_config(cfg), std::invalid_argument);
}

TEST(Scalarize, Examples) {
  const std::vector<ObjDef> two = {{"a", Direction::Minimize, 1}, {"b", Direction::Minimize, 1}};
  const std::vector<double> w = {0.9, 0.1};
  EXPECT_NEAR(scalarize(std::vector<double>{784, 5}, two, w), 706.1, 1e-12);
  const std::vector<ObjDef> one = {{"a", Direction::Minimize, 1}};
  EXPECT_DOUBLE_EQ(scalarize(std::vector<double>{3.25}, one, std::vector<double>{1.0}), 3.25);
  const std::vector<ObjDef> mx = {{"v", Direction::Maximize, 1}};
  EXPECT_DOUBLE_EQ(scalarize(std::vector<double>{30}, mx, std::vector<double>{1.0}), -30);
}

TEST(Compare, PenaltyFirst) {
  const auto cfg = two_obj(WeightedMode{{0.9, 0.1}});
  const auto a = with_objectives({1e6, 1e6}, 0.0);
  const auto b = with_objectives({1, 1}, 3.0);
  EXPECT_EQ(compare(a, b, cfg), Ordering::ABetter);
  EXPECT_EQ(compare(b, a, cfg), Ordering::BBetter);
  // Both infeasible: lower penalty wins before objectives are looked at.
  const auto c = with_objectives({1, 1}, 5.0);
  EXPECT_EQ(compare(b, c, cfg), Ordering::ABetter);
  // Equal penalty: falls through to the mode.
  const auto d = with_objectives({0, 0}, 3.0);
  EXPECT_EQ(compare(d, b, cfg), Ordering::ABetter);
}

TEST(Compare, WeightedAndLexicographicExamples) {
  EXPECT_EQ(compare(with_objectives({784, 5}), with_objectives({800, 5}), two_obj(WeightedMode{{0.9, 0.1}})),
            Ordering::ABetter);
  const auto lex = two_obj(LexicographicMode{{0, 1}, {50, 0}});
  EXPECT_EQ(compare(with_objectives({814, 5}), with_objectives({800, 5}), lex), Ordering::Equal);
  EXPECT_EQ(compare(with_objectives({814, 4}), with_objectives({800, 5}), lex), Ordering::ABetter);
  EXPECT_EQ(compare(with_objectives({900, 4}), with_objectives({800, 5}), lex), Ordering::BBetter);
  const auto veh_first = two_obj(LexicographicMode{{1, 0}, {0, 0}});
  EXPECT_EQ(compare(with_objectives({900, 4}), with_objectives({800, 5}), veh_first), Ordering::ABetter);
}

TEST(Compare, MaximizeDirection) {
  ProblemConfig cfg = perm_cfg(1);
  cfg.obj_defs = {{"v", Direction::Maximize, 1.0}};
  EXPECT_TRUE(better(with_objectives({30}), with_objectives({20}), cfg));
  cfg.comparison = LexicographicMode{{0}, {0}};
  EXPECT_TRUE(better(with_objectives({30}), with_objectives({20}), cfg));
}

// Total preorder properties on random data, zero-tolerance lexicographic and
// weighted modes. Positive tolerances are excluded on purpose: tolerance
// equality is not transitive.
TEST(Compare, PreorderProperties) {
  Rng rng(7);
  const std::vector<ProblemConfig> cfgs = {two_obj(WeightedMode{{0.9, 0.1}}), two_obj(LexicographicMode{{0, 1}, {0, 0}}),
                                           two_obj(LexicographicMode{{1, 0}, {0, 0}})};
  auto draw = [&] {
    return with_objectives({static_cast<double>(rng.index(4)), static_cast<double>(rng.index(3))},
                           rng.index(3) == 0 ? static_cast<double>(rng.index(3)) : 0.0);
  };
  for (const auto& cfg : cfgs) {
    for (int it = 0; it < 2000; ++it) {
      const auto a = draw(), b = draw(), c = draw();
      const auto ab = compare(a, b, cfg), ba = compare(b, a, cfg);
      EXPECT_EQ(ab == Ordering::ABetter, ba == Ordering::BBetter);
      EXPECT_EQ(ab == Ordering::Equal, ba == Ordering::Equal);
      EXPECT_EQ(compare(a, a, cfg), Ordering::Equal);
      if (!better(b, a, cfg) && !better(c, b, cfg)) EXPECT_FALSE(better(c, a, cfg));
      EXPECT_EQ(rank_less(a, b, cfg), better(a, b, cfg));
    }
  }
}

TEST(Fitness, WeightedPlusPenalty) {
  const auto cfg = two_obj(WeightedMode{{0.9, 0.1}});
  const auto a = with_objectives({784, 5}, 2.0);
  EXPECT_NEAR(fitness(a, cfg, 10.0), 706.1 + 20.0, 1e-9);
  const auto b = with_objectives({800, 5}, 0.0);
  EXPECT_NEAR(fitness_delta(a, b, cfg, 10.0), fitness(a, cfg, 10.0) - fitness(b, cfg, 10.0), 1e-9);
}

TEST(Fitness, LexicographicDeltaUsesFirstUntiedObjective) {
  const auto lex = two_obj(LexicographicMode{{0, 1}, {50, 0}});
  EXPECT_DOUBLE_EQ(fitness_delta(with_objectives({814, 4}), with_objectives({800, 5}), lex, 1.0), -1.0);
  EXPECT_DOUBLE_EQ(fitness_delta(with_objectives({814, 5}), with_objectives({800, 5}), lex, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(fitness_delta(with_objectives({900, 5}), with_objectives({800, 5}), lex, 1.0), 100.0);
}

TEST(Solution, EqualityIgnoresInactiveCells) {
  ProblemConfig cfg = perm_cfg(2);
  cfg.d1 = 2;
  cfg.row_mode = RowMode::MultiPartition;
  Solution a(2, 2, 1), b(2, 2, 1);
  a.data << 0, 1, 7, 7;
  b.data << 0, 1, 9, 9;
  a.dim2_sizes << 2, 0;
  b.dim2_sizes << 2, 0;
  EXPECT_TRUE(a == b);
  b.objectives[0] = 1;
  EXPECT_FALSE(a == b);
}

TEST(RandomSolution, AlwaysValid) {
  Rng rng(3);
  ProblemConfig part = perm_cfg(9);
  part.d1 = 3;
  part.row_mode = RowMode::MultiPartition;
  ProblemConfig fixed = perm_cfg(5);
  fixed.d1 = 4;
  fixed.row_mode = RowMode::MultiFixed;
  ProblemConfig integer = perm_cfg(6);
  integer.encoding = Encoding::integer(2, 5);
  for (const auto& cfg : {perm_cfg(7), part, fixed, integer})
    for (int i = 0; i < 200; ++i) EXPECT_TRUE(validate_solution(random_solution(cfg, rng), cfg).ok());
}

TEST(Rng, Deterministic) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({1, 2, 4}));
  Rng c(5);
  for (int i = 0; i < 1000; ++i) {
    const auto v = c.uniform_int(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
    const double u = c.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

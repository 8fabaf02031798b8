#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "primeladder/constructions.hpp"
#include "primeladder/ladder.hpp"
#include "reference.hpp"

using namespace primeladder;

namespace {

Labeling random_labeling(std::int64_t n, std::mt19937_64& rng) {
  std::vector<Label> labels(static_cast<std::size_t>(2 * n));
  std::iota(labels.begin(), labels.end(), 1);
  std::shuffle(labels.begin(), labels.end(), rng);
  return Labeling({labels.begin(), labels.begin() + n}, {labels.begin() + n, labels.end()});
}

}  // namespace

TEST(Labeling, RejectsMalformedGrids) {
  const auto kind_of = [](auto&& make) {
    try {
      make();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::parse_error;  // sentinel: nothing thrown
  };
  EXPECT_EQ(kind_of([] { Labeling({1, 2}, {3, 3}); }), ErrorKind::malformed_labeling);
  EXPECT_EQ(kind_of([] { Labeling({1, 2}, {3, 5}); }), ErrorKind::malformed_labeling);
  EXPECT_EQ(kind_of([] { Labeling({1, 2}, {3}); }), ErrorKind::malformed_labeling);
  EXPECT_EQ(kind_of([] { Labeling({}, {}); }), ErrorKind::malformed_labeling);
  EXPECT_EQ(kind_of([] { Labeling({0, 2}, {3, 4}); }), ErrorKind::malformed_labeling);
}

TEST(VerifyLabeling, SmallHandChecked) {
  EXPECT_TRUE(verify_labeling(Labeling({1, 2}, {4, 3})).empty());

  const auto bad = verify_labeling(Labeling({1, 3}, {2, 4}));
  ASSERT_EQ(bad.size(), 1U);
  EXPECT_EQ(bad[0], (Violation{{2, 1}, {2, 2}, 2, 4, 2}));
}

TEST(VerifyLabeling, BaseArrayForTwoIsPrime) {
  EXPECT_TRUE(verify_labeling(Labeling({5, 4, 3, 8}, {6, 7, 2, 1})).empty());
}

TEST(VerifyLabeling, PreSwapLemmaLabelingForEleven) {
  const Labeling s = lemma_pre_swap(11);
  const auto bad = verify_labeling(s);
  ASSERT_EQ(bad.size(), 2U);
  EXPECT_EQ(bad[0], (Violation{{1, 11}, {2, 11}, 11, 22, 11}));
  EXPECT_EQ(bad[1], (Violation{{1, 22}, {2, 22}, 44, 33, 11}));
}

TEST(VerifyLabeling, MatchesPairwiseReference) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 30);
    const Labeling l = random_labeling(n, rng);
    const auto got = verify_labeling(l);
    const auto want = reference::bad_edges(l.row(1), l.row(2));
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].position_a, (Position{want[i].r1, want[i].c1}));
      EXPECT_EQ(got[i].position_b, (Position{want[i].r2, want[i].c2}));
      EXPECT_EQ(got[i].common_divisor, want[i].d);
      EXPECT_EQ(got[i].label_a % got[i].common_divisor, 0);
      EXPECT_EQ(got[i].label_b % got[i].common_divisor, 0);
    }
    EXPECT_EQ(is_prime_labeling(l), want.empty());
  }
}

TEST(NeighborLabels, LemmaLabelingClaims) {
  for (const std::int64_t p : {7, 13, 19, 31}) {
    ASSERT_EQ(p % 3, 1);
    const Labeling l = lemma_ladder_2p(p);
    EXPECT_EQ(neighbor_labels(l, 1), (std::vector<Label>{3 * p - 1, 4 * p})) << p;
    EXPECT_EQ(neighbor_labels(l, 4), (std::vector<Label>{p, 2 * p - 1, 2 * p + 1})) << p;
    EXPECT_EQ(neighbor_labels(l, 2 * p), (std::vector<Label>{3, 5, p + 4})) << p;
  }
}

TEST(NeighborLabels, DegreeTwoExactlyAtCorners) {
  std::mt19937_64 rng(11);
  for (const std::int64_t n : {2, 3, 9, 40}) {
    const Labeling l = random_labeling(n, rng);
    for (Label x = 1; x <= 2 * n; ++x) {
      const Position p = l.position_of(x);
      const bool corner = p.column == 1 || p.column == n;
      EXPECT_EQ(neighbor_labels(l, x).size(), corner ? 2U : 3U) << n << " " << x;
    }
  }
  EXPECT_EQ(neighbor_labels(Labeling({1}, {2}), 1), (std::vector<Label>{2}));
}

TEST(NeighborLabels, OutOfRange) {
  const Labeling l({1, 2}, {4, 3});
  try {
    (void)neighbor_labels(l, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_label);
  }
  EXPECT_THROW((void)neighbor_labels(l, 0), Error);
}

TEST(SwapLabels, InvolutionAndNoOp) {
  std::mt19937_64 rng(3);
  const Labeling l = random_labeling(12, rng);
  EXPECT_EQ(swap_labels(swap_labels(l, 5, 17), 5, 17), l);
  EXPECT_EQ(swap_labels(l, 9, 9), l);
  const Labeling s = swap_labels(l, 5, 17);
  EXPECT_EQ(s.position_of(5), l.position_of(17));
  EXPECT_EQ(s.position_of(17), l.position_of(5));
  for (Label x = 1; x <= 24; ++x) {
    if (x != 5 && x != 17) {
      EXPECT_EQ(s.position_of(x), l.position_of(x));
    }
  }
  try {
    (void)swap_labels(l, 1, 25);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_label);
  }
}

TEST(SwapLabels, LemmaRepairsForSeven) {
  const Labeling l = swap_labels(swap_labels(lemma_pre_swap(7), 1, 21), 4, 14);
  EXPECT_EQ(l.at(1, 14), 28);
  EXPECT_EQ(l.at(2, 14), 1);
  EXPECT_TRUE(verify_labeling(l).empty());
}

TEST(PositionOf, GoldenElevenAndIdentity) {
  const Labeling l = lemma_ladder_2p(11);
  EXPECT_EQ(position_of(l, 1), (Position{2, 22}));
  EXPECT_EQ(position_of(l, 44), (Position{1, 22}));
  EXPECT_EQ(position_of(l, l.at(1, 1)), (Position{1, 1}));
  for (int r = 1; r <= 2; ++r) {
    for (std::int64_t j = 1; j <= 22; ++j) EXPECT_EQ(position_of(l, l.at(r, j)), (Position{r, j}));
  }
  EXPECT_THROW((void)position_of(l, 45), Error);
}

TEST(Csv, RoundTrip) {
  std::mt19937_64 rng(5);
  for (const std::int64_t n : {1, 4, 33}) {
    const Labeling l = random_labeling(n, rng);
    EXPECT_EQ(parse_csv(to_csv(l)), l);
  }
  EXPECT_EQ(to_csv(Labeling({5, 4, 3, 8}, {6, 7, 2, 1})), "5,4,3,8\n6,7,2,1\n");
  EXPECT_EQ(parse_csv("1,2\r\n4,3"), Labeling({1, 2}, {4, 3}));
}

TEST(Csv, ParseErrorsCarryLocation) {
  const auto location = [](std::string_view text) {
    try {
      (void)parse_csv(text);
    } catch (const ParseError& e) {
      return std::pair{e.line(), e.column()};
    }
    return std::pair{0, 0};
  };
  EXPECT_EQ(location("1,2\n4,x\n"), (std::pair{2, 3}));
  EXPECT_EQ(location("1,,2\n3,4,5\n"), (std::pair{1, 3}));
  EXPECT_EQ(location("1,2\n"), (std::pair{2, 1}));
  EXPECT_EQ(location("1,2\n3,4\n5,6\n"), (std::pair{3, 1}));
  EXPECT_EQ(location("1,2\n\n3,4\n"), (std::pair{2, 1}));
  EXPECT_EQ(location("1,2\n3\n"), (std::pair{2, 1}));
  EXPECT_EQ(location(""), (std::pair{1, 1}));

  try {
    (void)parse_csv("1,2\n2,3\n");
    FAIL();
  } catch (const ParseError&) {
    FAIL() << "duplicate label is a malformed labeling, not a syntax error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::malformed_labeling);
  }
}

TEST(AsciiGrid, GoldenLayout) {
  EXPECT_EQ(to_ascii_grid(Labeling({5, 4, 3, 8}, {6, 7, 2, 1})),
            "+---+---+---+---+\n"
            "| 5 | 4 | 3 | 8 |\n"
            "+---+---+---+---+\n"
            "| 6 | 7 | 2 | 1 |\n"
            "+---+---+---+---+\n");
  EXPECT_EQ(to_ascii_grid(Labeling({1, 4, 9, 8, 5}, {2, 3, 10, 7, 6})).substr(0, 32),
            "+----+----+----+----+----+\n|  1 ");
}

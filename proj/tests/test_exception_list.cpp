#include <doctest.h>

#include "occam/exception_list.hpp"
#include "occam/rng.hpp"

using namespace occam;

namespace {

std::vector<Point> random_points(unsigned n, std::size_t count, SplitMix64& gen) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < count; ++i) {
    pts.push_back(Point{static_cast<std::uint32_t>(uniform_below(gen, std::uint64_t{1} << n))});
  }
  return pts;
}

}  // namespace

TEST_CASE("exception sets are sorted, deduplicated and bounded") {
  const ExceptionSet e(2, {Point{3}, Point{1}, Point{3}});
  REQUIRE(e.size() == 2);
  CHECK(e.points()[0] == Point{1});
  CHECK(e.points()[1] == Point{3});
  CHECK(e.contains(Point{3}));
  CHECK_FALSE(e.contains(Point{0}));
  CHECK_THROWS_AS(ExceptionSet(2, {Point{4}}), DimensionMismatch);
  CHECK(ExceptionSet(3, {}).empty());
}

TEST_CASE("empty exception set leaves the truth table unchanged") {
  const auto c = random_decision_list(4, 4, 2, 11);
  CHECK(truth_table(ex_list(c, ExceptionSet(4, {}))) == truth_table(c));
  CHECK(ex_list(c, ExceptionSet(4, {})) == c);
}

TEST_CASE("flipping one point of the constant-0 list") {
  const DomainSpec spec(2);
  const auto ce = ex_list(DecisionList::constant(2, false), ExceptionSet(2, {spec.parse("01")}));
  for (Point x : enumerate_domain(spec)) CHECK(ce(x) == (spec.format(x) == "01"));
}

TEST_CASE("prepended rules are full width, ordered, and carry the flipped label") {
  const DomainSpec spec(3);
  const auto c = random_decision_list(3, 3, 2, 5);
  const ExceptionSet e(3, {Point{6}, Point{2}});
  const auto ce = ex_list(c, e);
  REQUIRE(ce.rules().size() == c.rules().size() + 2);
  CHECK(ce.rules()[0].term == Term::full(spec, Point{2}));
  CHECK(ce.rules()[1].term == Term::full(spec, Point{6}));
  CHECK(ce.rules()[0].label == !c(Point{2}));
  CHECK(ce.rules()[1].label == !c(Point{6}));
  CHECK_THROWS_AS(ex_list(c, ExceptionSet(2, {})), DimensionMismatch);
}

TEST_CASE("ex_list is c xor E, an involution, with exact size") {
  SplitMix64 gen(77);
  for (int trial = 0; trial < 400; ++trial) {
    const auto n = static_cast<unsigned>(1 + uniform_below(gen, 8));
    const auto c = random_decision_list(n, 5, 3, gen());
    const ExceptionSet e(n, random_points(n, uniform_below(gen, 10), gen));
    const auto ce = ex_list(c, e);
    const DomainSpec spec(n);
    for (Point x : enumerate_domain(spec)) REQUIRE(ce(x) == (c(x) != e.contains(x)));
    const auto back = ex_list(ce, e);
    for (Point x : enumerate_domain(spec)) REQUIRE(back(x) == c(x));
    CHECK(concept_size(ce).value == ExListBound{}(n, concept_size(c).value, e.size()));
  }
}

TEST_CASE("p_ex is monotone in each argument") {
  const ExListBound p;
  for (std::uint64_t n = 1; n < 6; ++n) {
    for (std::uint64_t s = 1; s < 6; ++s) {
      for (std::uint64_t e = 0; e < 6; ++e) {
        CHECK(p(n + 1, s, e) >= p(n, s, e));
        CHECK(p(n, s + 1, e) >= p(n, s, e));
        CHECK(p(n, s, e + 1) >= p(n, s, e));
      }
    }
  }
}

TEST_CASE("compute_exceptions examples") {
  const DomainSpec spec(2);
  const DecisionList c(2, {{Term({Literal{0, true}}), true}}, false);
  std::vector<Point> pts{spec.parse("00"), spec.parse("10"), spec.parse("10"), spec.parse("11")};
  const auto sample = label_points(c, pts);
  CHECK(compute_exceptions(c, sample).empty());

  const DecisionList complement(2, {{Term({Literal{0, true}}), false}}, true);
  const auto all = compute_exceptions(complement, sample);
  CHECK(all.size() == 3);

  const auto constant_one = DecisionList::constant(2, true);
  LabeledSample dup{2, {{spec.parse("01"), false}, {spec.parse("01"), false}, {spec.parse("11"), true}}};
  const auto one = compute_exceptions(constant_one, dup);
  REQUIRE(one.size() == 1);
  CHECK(one.points()[0] == spec.parse("01"));

  LabeledSample conflict{2, {{spec.parse("01"), false}, {spec.parse("01"), true}}};
  CHECK_THROWS_AS(compute_exceptions(constant_one, conflict), CorruptSample);
  CHECK_THROWS(compute_exceptions(constant_one, LabeledSample{2, {}}));
}

TEST_CASE("no exceptions exactly when the training error is zero") {
  SplitMix64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 3;
    const auto target = random_decision_list(n, 3, 2, gen());
    const auto h = random_decision_list(n, 3, 2, gen());
    const auto sample = label_points(target, random_points(n, 1 + uniform_below(gen, 6), gen));
    CHECK(compute_exceptions(h, sample).empty() == (training_error(h, sample) == 0.0));
    // Repairing the exceptions always yields a consistent list.
    CHECK(training_error(ex_list(h, compute_exceptions(h, sample)), sample) == 0.0);
  }
}

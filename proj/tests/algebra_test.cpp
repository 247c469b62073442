#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wgame;
using Atoms = std::vector<std::vector<Element>>;

namespace {

FinitePartition P(std::size_t n, Atoms atoms) { return FinitePartition::from_atoms(n, std::move(atoms)); }

// Every pairwise nonempty intersection, computed on explicit sets.
std::set<std::set<Element>> intersections(const FinitePartition& p, const FinitePartition& q) {
  std::set<std::set<Element>> out;
  for (const auto& a : p.atoms())
    for (const auto& b : q.atoms()) {
      std::set<Element> s;
      for (Element e : a)
        if (std::find(b.begin(), b.end(), e) != b.end()) s.insert(e);
      if (!s.empty()) out.insert(s);
    }
  return out;
}

std::set<std::set<Element>> as_sets(const FinitePartition& p) {
  std::set<std::set<Element>> out;
  for (const auto& a : p.atoms()) out.insert(std::set<Element>(a.begin(), a.end()));
  return out;
}

void expect_valid(const FinitePartition& p) {
  std::vector<int> seen(p.ground_size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    ASSERT_FALSE(p.atom(i).empty());
    for (Element e : p.atom(i)) {
      ++seen[e];
      EXPECT_EQ(p.atom_of(e), i);
    }
    if (i > 0) EXPECT_LT(p.atom(i - 1).front(), p.atom(i).front());
  }
  for (int s : seen) EXPECT_EQ(s, 1);
}

}  // namespace

TEST(Algebra, TrivialField) {
  EXPECT_EQ(trivial(GroundSet(3)).atoms(), (Atoms{{0, 1, 2}}));
  EXPECT_EQ(trivial(GroundSet(1)).atoms(), (Atoms{{0}}));
  const auto p = P(4, {{0, 2}, {1}, {3}});
  EXPECT_TRUE(is_subfield(trivial(GroundSet(4)), p));
  EXPECT_THROW(GroundSet(0), InvalidArgument);
}

TEST(Algebra, CompleteField) {
  const auto c = complete(GroundSet(3));
  EXPECT_EQ(c.atoms(), (Atoms{{0}, {1}, {2}}));
  for (Element k = 0; k < 3; ++k) EXPECT_EQ(c.atom_of(k), k);
  const auto p = P(3, {{0, 2}, {1}});
  EXPECT_EQ(join(c, p), c);
  EXPECT_TRUE(is_subfield(p, c));
}

TEST(Algebra, ContainsUnionsOfAtoms) {
  const auto p = P(3, {{0, 1}, {2}});
  EXPECT_TRUE(contains(p, {0, 1}));
  EXPECT_FALSE(contains(p, {0, 2}));
  EXPECT_TRUE(contains(p, {0, 1, 2}));
  EXPECT_TRUE(contains(trivial(GroundSet(4)), std::span<const Element>{}));
  EXPECT_THROW(contains(p, {5}), InvalidArgument);
}

TEST(Algebra, Subfield) {
  EXPECT_TRUE(is_subfield(P(4, {{0, 1}, {2, 3}}), P(4, {{0}, {1}, {2, 3}})));
  EXPECT_FALSE(is_subfield(P(4, {{0}, {1}, {2, 3}}), P(4, {{0, 1}, {2, 3}})));
  EXPECT_THROW(is_subfield(trivial(GroundSet(3)), trivial(GroundSet(4))), InvalidArgument);
}

TEST(Algebra, JoinIntersectsAtoms) {
  const auto p = P(4, {{0, 1}, {2, 3}});
  const auto q = P(4, {{0, 2}, {1, 3}});
  const auto j = join(p, q);
  EXPECT_EQ(as_sets(j), intersections(p, q));
  EXPECT_EQ(j.atoms(), (Atoms{{0}, {1}, {2}, {3}}));
  EXPECT_EQ(join(p, trivial(GroundSet(4))), p);
  EXPECT_EQ(join(p, p), p);
  EXPECT_THROW(join(p, trivial(GroundSet(3))), InvalidArgument);
}

TEST(Algebra, MalformedAtomListsRejected) {
  EXPECT_THROW(P(3, {{0, 1}, {1, 2}}), InvalidArgument);  // overlap
  EXPECT_THROW(P(3, {{0, 1}}), InvalidArgument);          // not covering
  EXPECT_THROW(P(3, {{0, 1, 2}, {}}), InvalidArgument);   // empty atom
  EXPECT_THROW(P(3, {{0, 1, 3}, {2}}), InvalidArgument);  // out of range
}

TEST(Algebra, CanonicalAtomOrder) {
  const auto p = P(5, {{4, 2}, {3, 0}, {1}});
  EXPECT_EQ(p.atoms(), (Atoms{{0, 3}, {1}, {2, 4}}));
  EXPECT_EQ(p, P(5, {{1}, {2, 4}, {0, 3}}));
}

TEST(Algebra, CylinderFields) {
  EXPECT_EQ(cylinder({2, 2}, {}).size(), 1u);
  EXPECT_EQ(cylinder({2, 2}, {0, 1}).size(), 4u);
  // sizes [2,3,2], observe the middle coordinate: group indices by middle digit.
  const auto c = cylinder({2, 3, 2}, {1});
  std::map<std::size_t, std::set<Element>> by_digit;
  for (Element e = 0; e < 12; ++e) by_digit[(e / 2) % 3].insert(e);
  std::set<std::set<Element>> expected;
  for (auto& [d, s] : by_digit) expected.insert(s);
  EXPECT_EQ(as_sets(c), expected);
  for (const auto& atom : c.atoms()) EXPECT_EQ(atom.size(), 4u);
  EXPECT_THROW(cylinder({2, 2}, {2}), InvalidArgument);
}

TEST(Algebra, CoarsenedCylinder) {
  const MixedRadix space({3, 2});
  const std::vector<Observation> obs{{0, {0, 0, 1}}};
  const auto c = cylinder(space, obs);
  EXPECT_EQ(c.atoms(), (Atoms{{0, 1, 2, 3}, {4, 5}}));
  const std::vector<Observation> bad{{0, {0, 1}}};
  EXPECT_THROW(cylinder(space, bad), InvalidArgument);
}

TEST(AlgebraProperty, ContainsAgreesWithNaiveClosure) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const auto p = oracle::random_partition(rng, n, 4);
    expect_valid(p);
    const auto field = oracle::closure(p);
    for (oracle::Mask s = 0; s < (oracle::Mask{1} << n); ++s) {
      std::vector<Element> elems;
      for (Element e = 0; e < n; ++e)
        if (s >> e & 1) elems.push_back(e);
      ASSERT_EQ(contains(p, elems), field.count(s) == 1) << "trial " << trial << " set " << s;
    }
  }
}

TEST(AlgebraProperty, JoinLaws) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const auto p = oracle::random_partition(rng, n, 5);
    const auto q = oracle::random_partition(rng, n, 5);
    const auto r = oracle::random_partition(rng, n, 5);
    const auto pq = join(p, q);
    expect_valid(pq);
    EXPECT_EQ(pq, join(q, p));
    EXPECT_EQ(join(pq, r), join(p, join(q, r)));
    EXPECT_EQ(join(p, p), p);
    EXPECT_TRUE(is_subfield(p, pq));
    EXPECT_TRUE(is_subfield(q, pq));
    EXPECT_EQ(as_sets(pq), intersections(p, q));
  }
}

TEST(AlgebraProperty, CylinderOfUnionIsJoin) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rank = 1 + rng() % 4;
    std::vector<std::size_t> sizes(rank);
    for (auto& s : sizes) s = 1 + rng() % 3;
    std::vector<std::size_t> a, b;
    for (std::size_t i = 0; i < rank; ++i) {
      const auto pick = rng() % 3;
      if (pick == 0) a.push_back(i);
      if (pick == 1) b.push_back(i);
    }
    std::vector<std::size_t> ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    EXPECT_EQ(cylinder(sizes, ab), join(cylinder(sizes, a), cylinder(sizes, b)));
    std::size_t atoms = 1;
    for (std::size_t i : ab) atoms *= sizes[i];
    EXPECT_EQ(cylinder(sizes, ab).size(), atoms);
  }
}

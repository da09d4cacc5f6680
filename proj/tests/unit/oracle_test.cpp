#include <gtest/gtest.h>

#include <random>

#include "hypercsa/errors.hpp"
#include "hypercsa/oracle.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace {

using namespace hypercsa;
using testgen::sorted_edges;
using Labels = std::vector<Label>;

TEST(IncidenceList, ExampleQueries) {
  oracle::IncidenceList h(make_labeled(testgen::example_edges()));
  EXPECT_EQ(h.exists(Labels{2}), 2u);
  EXPECT_EQ(sorted_edges(h.contains(Labels{1, 3})), (EdgeList{{0, 1, 2, 3}, {1, 2, 3}}));
  EXPECT_EQ(sorted_edges(h.contains_by_scan(Labels{1, 3})), (EdgeList{{0, 1, 2, 3}, {1, 2, 3}}));
  EXPECT_EQ(h.degree(2), 5u);
  EXPECT_EQ(h.decompress(), canonicalize(make_labeled(testgen::example_edges()).graph));
}

TEST(IncidenceList, SingleLoop) {
  oracle::IncidenceList h(make_labeled({{0}}));
  EXPECT_EQ(h.degree(0), 1u);
}

TEST(IncidenceList, ErrorClassesMatchQueryEngine) {
  oracle::IncidenceList h(make_labeled(testgen::example_edges()));
  EXPECT_THROW(h.degree(9), NotFoundError);
  EXPECT_THROW(h.contains(Labels{9}), NotFoundError);
  EXPECT_THROW(h.contains(Labels{}), UsageError);
  EXPECT_EQ(h.exists(Labels{9}), 0u);
  EXPECT_THROW(h.exists(Labels{1, 1}), UsageError);
  EXPECT_THROW(h.exists(Labels{}), UsageError);
}

TEST(IncidenceListProperty, IncidenceListsMirrorEdgeTable) {
  std::mt19937_64 rng(81);
  for (int round = 0; round < 100; ++round) {
    oracle::IncidenceList h(testgen::random_small_graph(rng));
    for (std::size_t e = 0; e < h.edge_count(); ++e) {
      for (NodeId v : h.edge(e)) {
        auto inc = h.incident(v);
        ASSERT_TRUE(std::binary_search(inc.begin(), inc.end(), static_cast<std::uint32_t>(e)));
      }
    }
    for (NodeId v = 0; v < h.node_count(); ++v) {
      for (std::uint32_t e : h.incident(v)) {
        auto edge = h.edge(e);
        ASSERT_TRUE(std::binary_search(edge.begin(), edge.end(), v));
      }
    }
  }
}

TEST(IncidenceListProperty, IndependentOfInsertionOrder) {
  std::mt19937_64 rng(82);
  for (int round = 0; round < 100; ++round) {
    auto edges = testgen::random_small_edges(rng);
    auto shuffled = edges;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    oracle::IncidenceList a(make_labeled(edges)), b(make_labeled(shuffled));
    EXPECT_EQ(a.decompress(), b.decompress());
    for (int qi = 0; qi < 20; ++qi) {
      testgen::Query q = testgen::random_query(rng, edges);
      try {
        EXPECT_EQ(sorted_edges(a.contains(q.labels)), sorted_edges(b.contains(q.labels)));
        EXPECT_EQ(sorted_edges(a.contains(q.labels)), sorted_edges(a.contains_by_scan(q.labels)));
      } catch (const NotFoundError&) {
        EXPECT_THROW(b.contains(q.labels), NotFoundError);
      }
      try {
        EXPECT_EQ(a.exists(q.labels), b.exists(q.labels));
      } catch (const UsageError&) {
        EXPECT_THROW(b.exists(q.labels), UsageError);
      }
    }
  }
}

}  // namespace

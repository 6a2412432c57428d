#include <gtest/gtest.h>

#include <cmath>

#include "rectpart/bounds.hpp"
#include "rectpart/instance_gen.hpp"
#include "rectpart/partition_dc.hpp"
#include "rectpart/partition_mdc.hpp"
#include "support.hpp"

using namespace rectpart;

TEST(DetectForced, SingleLeafIsForced) {
  const Instance inst(Rect{0, 0, 2, 1}, {2.0});
  const Layout layout = partition_dc(inst);
  EXPECT_EQ(detect_forced(layout.tree, inst.areas()).ids(), (std::vector<std::size_t>{0}));
  const LowerBounds lb = lower_bound(inst, layout);
  EXPECT_DOUBLE_EQ(lb.forced_aware, 3.0);
}

TEST(DetectForced, DominantAreaForcesTheSmallerPiece) {
  // 0.6 >= 1/2 forces the bottom piece. The top piece's long edges lie on two
  // different forced rectangles, which is not enough by default.
  const Instance inst(Rect{0, 0, 1, 1}, {0.6, 0.4});
  const Layout layout = partition_dc(inst);
  ASSERT_EQ(layout.tree.root().cut, Cut::Horizontal);
  EXPECT_EQ(detect_forced(layout.tree, inst.areas()).ids(), (std::vector<std::size_t>{0, 2}));

  const LowerBounds lb = lower_bound(inst, layout);
  EXPECT_NEAR(lb.naive, 2 * (std::sqrt(0.6) + std::sqrt(0.4)), 1e-12);
  EXPECT_NEAR(lb.forced_aware, 1.4 + 2 * std::sqrt(0.6), 1e-12);
  EXPECT_NEAR(report(inst, layout).approx_ratio, 3.0 / (1.4 + 2 * std::sqrt(0.6)), 1e-12);
}

TEST(DetectForced, PerEdgeAttributionForcesBothHalves) {
  // The top piece's edges lie on the root's top edge and on the bottom
  // piece's upper edge.
  const Instance inst(Rect{0, 0, 1, 1}, {0.6, 0.4});
  const Layout layout = partition_dc(inst);
  EXPECT_EQ(detect_forced(layout.tree, inst.areas(), EdgeAttribution::PerEdge).ids(),
            (std::vector<std::size_t>{0, 1, 2}));
  const LowerBounds lb = lower_bound(inst, layout, EdgeAttribution::PerEdge);
  EXPECT_NEAR(lb.forced_aware, 3.0, 1e-12);
}

TEST(DetectForced, NoDominantAreaLeavesOnlyTheRoot) {
  // A1 = 0.4 < 1/2: the bottom strip is not forced, and no piece has both long
  // edges on forced edges.
  const Instance inst(Rect{0, 0, 1, 1}, {0.4, 0.3, 0.3});
  const Layout layout = partition_dc(inst);
  const LayoutNode& root = layout.tree.root();
  ASSERT_FALSE(root.is_leaf());
  EXPECT_NEAR(area(layout.tree[root.right].rect), 0.4, 1e-12);
  const ForcedSet forced = detect_forced(layout.tree, inst.areas());
  EXPECT_FALSE(forced.contains(root.right));
  EXPECT_EQ(forced.ids(), (std::vector<std::size_t>{0}));
}

TEST(LowerBound, HalvingIsTight) {
  const Instance inst(Rect{0, 0, 1, 1}, {0.5, 0.5});
  const LowerBounds lb = lower_bound(inst, partition_dc(inst));
  EXPECT_NEAR(lb.naive, 4 * std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(lb.forced_aware, 3.0, 1e-12);
}

TEST(LowerBound, RejectsInvalidLayout) {
  const Instance inst(Rect{0, 0, 1, 1}, {0.5, 0.5});
  Layout layout = partition_dc(inst);
  std::swap(layout.rects[0], layout.rects[1]);
  EXPECT_THROW(lower_bound(inst, layout), DomainError);
  const Instance other(Rect{0, 0, 1, 1}, {0.6, 0.4});
  EXPECT_THROW(report(other, partition_dc(inst)), DomainError);
}

TEST(Report, FiveAreas) {
  const Instance inst(Rect{0, 0, 5, 3}, {5, 4, 3, 2, 1});
  const QualityReport rep = report(inst, partition_dc(inst));
  const double naive = 2 * (std::sqrt(5.0) + 2 + std::sqrt(3.0) + std::sqrt(2.0) + 1);
  EXPECT_NEAR(rep.total_half_perimeter, 17.5, 1e-12);
  EXPECT_NEAR(rep.naive_lower_bound, naive, 1e-12);
  EXPECT_NEAR(naive, 16.7646, 1e-4);
  EXPECT_GE(rep.forced_aware_lower_bound, rep.naive_lower_bound);
  EXPECT_LE(rep.approx_ratio, 17.5 / naive + 1e-12);
  ASSERT_EQ(rep.per_rect.size(), 5u);
  EXPECT_NEAR(rep.per_rect[0].aspect_ratio, 1.8, 1e-12);
  EXPECT_NEAR(rep.max_aspect_ratio, 2.25, 1e-12);
}

TEST(Report, SingleAreaRatioIsOne) {
  const Instance inst(Rect{0, 0, 4, 1}, {4.0});
  const QualityReport rep = report(inst, partition_dc(inst));
  EXPECT_DOUBLE_EQ(rep.approx_ratio, 1.0);
  EXPECT_TRUE(rep.per_rect[0].is_forced);
}

TEST(Bounds, PropertiesOverSweep) {
  for (std::uint64_t k = 0; k < 1500; ++k) {
    const Instance inst = generate(fixtures::sweep_spec(k));
    for (const Layout& layout : {partition_dc(inst), partition_mdc(inst)}) {
      const LowerBounds lb = lower_bound(inst, layout);
      EXPECT_GE(lb.forced_aware, lb.naive - 1e-9);
      EXPECT_GE(total_half_perimeter(layout) / lb.forced_aware, 1.0 - 1e-9) << "seed " << k;
      for (const LayoutNode& node : layout.tree.nodes) {
        if (node.is_leaf()) continue;
        const std::size_t id = static_cast<std::size_t>(&node - layout.tree.nodes.data());
        for (std::size_t child : {node.left, node.right}) {
          if (lb.forced.contains(child)) {
            EXPECT_TRUE(lb.forced.contains(id)) << "seed " << k << " node " << child;
          }
        }
      }
    }
    const Layout dc = partition_dc(inst);
    EXPECT_LE(report(inst, dc).approx_ratio, 1.203 + 1e-9) << "seed " << k;
  }
}

TEST(ReconstructTree, RecoversGuillotineLayouts) {
  for (std::uint64_t k = 0; k < 300; ++k) {
    const Instance inst = generate(fixtures::sweep_spec(k, 1, 60));
    for (const Layout& layout : {partition_dc(inst), partition_mdc(inst)}) {
      const auto tree = reconstruct_tree(inst.container(), layout.rects);
      ASSERT_TRUE(tree.has_value()) << "seed " << k;
      EXPECT_EQ(leaf_rects(*tree, inst.size()), layout.rects);
      const Layout rebuilt{layout.rects, *tree};
      EXPECT_GE(lower_bound(inst, rebuilt).forced_aware, lower_bound(inst, rebuilt).naive - 1e-9);
    }
  }
}

TEST(ReconstructTree, MatchesAlgorithmTreeOnSmallCases) {
  const Instance inst(Rect{0, 0, 5, 3}, {5, 4, 3, 2, 1});
  const Layout layout = partition_dc(inst);
  const auto tree = reconstruct_tree(inst.container(), layout.rects);
  ASSERT_TRUE(tree);
  ASSERT_EQ(tree->size(), layout.tree.size());
  for (std::size_t id = 0; id < tree->size(); ++id) {
    EXPECT_EQ((*tree)[id].is_leaf(), layout.tree[id].is_leaf());
    EXPECT_EQ((*tree)[id].area_index, layout.tree[id].area_index);
  }
}

TEST(ReconstructTree, RejectsPinwheel) {
  const std::vector<Rect> pinwheel{{0, 0, 2, 1}, {2, 0, 1, 2}, {1, 2, 2, 1}, {0, 1, 1, 2}, {1, 1, 1, 1}};
  EXPECT_FALSE(reconstruct_tree(Rect{0, 0, 3, 3}, pinwheel).has_value());
}

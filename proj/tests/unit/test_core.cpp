#include <gtest/gtest.h>

#include "helpers.hpp"
#include "pvclass/core.hpp"
#include "pvclass/errors.hpp"

using namespace pvclass;

namespace {

PValueVector pv(std::vector<double> v) { return PValueVector(std::move(v)); }

}  // namespace

TEST(Region, ThresholdsStrictly) {
  EXPECT_EQ(region_from_pvalues(pv({0.20, 0.03}), 0.05).mask(), label_bit(ClassLabel(1)));
  EXPECT_EQ(region_from_pvalues(pv({0.20, 0.03}), 0.01).mask(), 0b11u);
  EXPECT_TRUE(region_from_pvalues(pv({0.04, 0.02}), 0.05).empty());
}

TEST(Region, ValueEqualToAlphaIsExcluded) {
  const auto r = region_from_pvalues(pv({0.05, 0.5}), 0.05);
  EXPECT_FALSE(r.contains(ClassLabel(1)));
  EXPECT_TRUE(r.contains(ClassLabel(2)));
  EXPECT_EQ(r.count(), 1u);
  EXPECT_EQ(r.members(), std::vector<ClassLabel>{ClassLabel(2)});
}

TEST(Region, AlphaOutsideUnitIntervalThrows) {
  EXPECT_THROW(region_from_pvalues(pv({0.5, 0.5}), 0.0), InvalidArgument);
  EXPECT_THROW(region_from_pvalues(pv({0.5, 0.5}), 1.0), InvalidArgument);
  EXPECT_THROW(region_from_pvalues(pv({0.5, 0.5}), -0.1), InvalidArgument);
}

TEST(Region, AntitoneInAlphaAndMembershipIsLocal) {
  Rng rng(11);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(5);
    for (double& x : v) x = rng.uniform();
    const double a = rng.uniform_open();
    const double b = rng.uniform_open();
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const auto big = region_from_pvalues(pv(v), lo).mask();
    const auto small = region_from_pvalues(pv(v), hi).mask();
    EXPECT_EQ(small & ~big, 0u);
    auto w = v;
    w[0] = rng.uniform();
    const auto changed = region_from_pvalues(pv(w), lo).mask();
    EXPECT_EQ(changed & ~LabelSet{1}, big & ~LabelSet{1});
  }
}

TEST(PValues, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(pv({0.5, 1.2}), InvalidArgument);
  EXPECT_THROW(pv({-0.01, 0.5}), InvalidArgument);
  EXPECT_NO_THROW(pv({0.0, 1.0}));
  EXPECT_NO_THROW(pv({0.9, 0.9}));
}

TEST(TrainingSetValidation, CountsGroups) {
  const auto d = validate_training_set({{0, 0}, {1, 0}, {2, 2}, {3, 3}}, std::vector<int>{1, 1, 2, 2});
  EXPECT_EQ(d.size(), 4u);
  EXPECT_EQ(d.dim(), 2u);
  EXPECT_EQ(d.num_classes(), 2u);
  EXPECT_EQ(d.group_size(ClassLabel(1)), 2u);
  EXPECT_EQ(d.group_size(ClassLabel(2)), 2u);
  EXPECT_EQ(d.group(ClassLabel(2)), (std::vector<std::size_t>{2, 3}));
}

TEST(TrainingSetValidation, DeclaredEmptyClassIsNamed) {
  try {
    validate_training_set({{0.0}, {1.0}, {2.0}}, std::vector<int>{1, 1, 1}, 2);
    FAIL() << "expected StructuralError";
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("class 2 empty"), std::string::npos);
  }
}

TEST(TrainingSetValidation, MixedDimensionsThrow) {
  EXPECT_THROW(validate_training_set({{0, 0}, {1, 0, 1}}, std::vector<int>{1, 2}), StructuralError);
}

TEST(TrainingSetValidation, NonFiniteAndLengthMismatchThrow) {
  EXPECT_THROW(validate_training_set({{0.0}, {std::nan("")}}, std::vector<int>{1, 2}), StructuralError);
  EXPECT_THROW(validate_training_set({{0.0}, {1.0}}, std::vector<int>{1, 2, 2}), StructuralError);
}

TEST(TrainingSetValidation, StringLabelsFollowFirstAppearance) {
  const auto d = validate_training_set({{0.0}, {1.0}, {2.0}, {3.0}}, std::vector<std::string>{"b", "a", "b", "c"});
  EXPECT_EQ(d.num_classes(), 3u);
  EXPECT_EQ(d.label_name(ClassLabel(1)), "b");
  EXPECT_EQ(d.label_name(ClassLabel(2)), "a");
  EXPECT_EQ(d.label_name(ClassLabel(3)), "c");
  EXPECT_EQ(d.label(2), ClassLabel(1));
}

TEST(TrainingSetValidation, DeclaredNamesMustAllAppear) {
  EXPECT_THROW(validate_training_set({{0.0}, {1.0}}, std::vector<std::string>{"x", "y"}, {"x", "y", "z"}),
               StructuralError);
}

TEST(TrainingSetEdits, GroupsStayAPartition) {
  const auto d = pvtest::random_data(12, 2, 3, 5);
  const auto check = [](const TrainingSet& e) {
    std::vector<int> seen(e.size(), 0);
    for (std::size_t t = 0; t < e.num_classes(); ++t) {
      for (std::size_t i : e.group(ClassLabel::from_index(t))) {
        ++seen[i];
        EXPECT_EQ(e.label(i), ClassLabel::from_index(t));
      }
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  };
  check(d);
  check(d.without(4));
  check(d.with_added(std::vector<double>{1.0, 1.0}, ClassLabel(2)));
  check(d.with_label(0, ClassLabel(3)));
  const auto r = d.with_replaced(3, std::vector<double>{7.0, 8.0});
  check(r);
  EXPECT_EQ(r.row(3)[0], 7.0);
  EXPECT_EQ(r.label(3), d.label(3));
  const auto a = d.with_added(std::vector<double>{1.0, 1.0}, ClassLabel(2));
  EXPECT_EQ(a.size(), 13u);
  EXPECT_EQ(a.label(12), ClassLabel(2));
  EXPECT_EQ(a.group(ClassLabel(2)).back(), 12u);
}

TEST(TrainingSetEdits, RemovingLastMemberThrows) {
  const auto d = validate_training_set({{0.0}, {1.0}, {2.0}}, std::vector<int>{1, 1, 2});
  EXPECT_THROW(d.without(2), StructuralError);
  EXPECT_NO_THROW(d.without(0));
}

TEST(LabelSets, MembersAscending) {
  EXPECT_EQ(members_of(0b1010), (std::vector<ClassLabel>{ClassLabel(2), ClassLabel(4)}));
  EXPECT_TRUE(members_of(0).empty());
}

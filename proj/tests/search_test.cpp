// Copyright 2026 The tomoforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

#include "golden.hpp"
#include "tomoforge/error.hpp"
#include "tomoforge/search.hpp"

namespace tomoforge {
namespace {

TEST(ReadoutSet, SortsAndRejectsDuplicates) {
  EXPECT_EQ(ReadoutSet({13, 1, 12, 2, 6}).to_string(), "1,2,6,12,13");
  EXPECT_THROW(ReadoutSet({1, 1}), InputError);
  EXPECT_THROW(ReadoutSet({0}), InputError);
}

TEST(SetReport, Examples) {
  EXPECT_TRUE(set_report(ReadoutSet{1, 2, 6, 12, 13}).full_rank);

  std::vector<ReadoutId> all = ReadoutId::all();
  const SetReport full = set_report(ReadoutSet(all));
  EXPECT_EQ(full.rank, 16u);
  for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(full.eigenvalues[k], golden::kFullSetEigenvalues[k], 1e-9);
  EXPECT_NEAR(full.min_eigenvalue, 2.0, 1e-9);

  const SetReport four = set_report(ReadoutSet{1, 2, 3, 4});
  EXPECT_FALSE(four.full_rank);
  EXPECT_LT(four.rank, 16u);
}

TEST(Search, MinimumReadoutCountIsFive) { EXPECT_EQ(minimum_readout_count(), 5u); }

TEST(Search, NoFourSetIsFullRank) {
  EXPECT_TRUE(enumerate_minimal_sets(4).empty());
}

TEST(Search, FullRankMatchesMinEigenvalue) {
  // Every size-4 and size-5 subset: full rank iff C has no (numerically) zero
  // eigenvalue, with a wide gap between the two groups.
  for (int k : {4, 5}) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 1);
    std::size_t count = 0;
    while (true) {
      std::vector<ReadoutId> ids;
      for (int i : idx) ids.emplace_back(i);
      const SetReport r = set_report(ReadoutSet(ids));
      if (r.full_rank) {
        EXPECT_GT(r.min_eigenvalue, 0.4);
      } else {
        EXPECT_LT(std::abs(r.min_eigenvalue), 1e-9);
      }
      ++count;
      int i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == 18 - k + i + 1) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    EXPECT_EQ(count, k == 4 ? 3060u : 8568u);
  }
}

TEST(Search, FiveSetsMatchReferenceTable) {
  const auto found = enumerate_minimal_sets(5);
  EXPECT_EQ(found.size(), 72u);
  EXPECT_EQ(reference_five_sets().size(), 72u);
  const SetDiff diff = diff_sets(found, reference_five_sets());
  EXPECT_TRUE(diff.empty());
  EXPECT_TRUE(std::is_sorted(found.begin(), found.end(), [](const SetReport& a, const SetReport& b) { return a.set < b.set; }));
}

TEST(Search, DiffReportsMissingAndExtra) {
  auto found = enumerate_minimal_sets(5);
  const ReadoutSet dropped = found.front().set;
  found.erase(found.begin());
  found.push_back(set_report(ReadoutSet{1, 2, 3, 4, 5}));
  const SetDiff diff = diff_sets(found, reference_five_sets());
  ASSERT_EQ(diff.missing.size(), 1u);
  EXPECT_EQ(diff.missing.front(), dropped);
  ASSERT_EQ(diff.extra.size(), 1u);
  EXPECT_EQ(diff.extra.front().to_string(), "1,2,3,4,5");
}

TEST(Search, FullSetIsOnlyEighteenSet) {
  const auto found = enumerate_minimal_sets(18);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found.front().set.size(), 18u);
}

TEST(Search, RejectsBadSize) {
  EXPECT_THROW(enumerate_minimal_sets(0), InputError);
  EXPECT_THROW(enumerate_minimal_sets(19), InputError);
}

TEST(Search, DeterministicAcrossThreadCounts) {
  const auto one = enumerate_minimal_sets(5, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = enumerate_minimal_sets(5, threads);
    ASSERT_EQ(many.size(), one.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      EXPECT_EQ(many[i].set, one[i].set);
      EXPECT_EQ(many[i].eigenvalues, one[i].eigenvalues);
    }
  }
}

TEST(Search, SpinMirrorSymmetryOfFiveSets) {
  std::map<int, int> count;
  for (const SetReport& r : enumerate_minimal_sets(5))
    for (const ReadoutId& id : r.set.ids()) ++count[id.value()];
  for (int t = 1; t <= 9; ++t) EXPECT_EQ(count[t], count[t + 9]) << t;
}

TEST(Search, SupersetsOfFullRankSetsStayFullRank) {
  std::mt19937_64 rng(2024);
  const auto& base = reference_five_sets();
  std::uniform_int_distribution<int> id(1, 18), extra(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const ReadoutSet& s = base[static_cast<std::size_t>(trial) % base.size()];
    std::set<int> ids;
    for (const ReadoutId& r : s.ids()) ids.insert(r.value());
    const int add = extra(rng);
    while (static_cast<int>(ids.size()) < 5 + add) ids.insert(id(rng));
    std::vector<ReadoutId> v;
    for (int i : ids) v.emplace_back(i);
    EXPECT_TRUE(set_report(ReadoutSet(v)).full_rank);
  }
}

TEST(RankByConditioning, OrderingAndTies) {
  const SetReport single = set_report(ReadoutSet{1, 2, 6, 12, 13});
  const auto one = rank_sets_by_conditioning({single});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.front().set, single.set);

  auto reports = enumerate_minimal_sets(5);
  reports.push_back(set_report(ReadoutSet(ReadoutId::all())));
  reports.push_back(set_report(ReadoutSet{1, 2, 3, 4}));
  const auto ranked = rank_sets_by_conditioning(reports);
  EXPECT_EQ(ranked.size(), 73u);
  EXPECT_EQ(ranked.front().set.size(), 18u);
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    EXPECT_GE(ranked[i - 1].min_eigenvalue, ranked[i].min_eigenvalue);
    if (ranked[i - 1].min_eigenvalue == ranked[i].min_eigenvalue) EXPECT_LT(ranked[i - 1].set, ranked[i].set);
  }
  EXPECT_EQ(rank_sets_by_conditioning(reports, 3).size(), 3u);

  const auto doubled = rank_sets_by_conditioning({single, single});
  ASSERT_EQ(doubled.size(), 2u);
  EXPECT_EQ(doubled[0].set, doubled[1].set);
}

}  // namespace
}  // namespace tomoforge

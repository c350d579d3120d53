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

#include "tomoforge/search.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <thread>

#include "tomoforge/analysis.hpp"
#include "tomoforge/error.hpp"

namespace tomoforge {

namespace {

std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Order-preserving parallel map over the C(18,k) subsets.
std::vector<SetReport> report_all(int k, unsigned threads) {
  const auto subsets = combinations(kNumReadouts, k);
  std::vector<std::optional<SetReport>> slots(subsets.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(subsets.size()));

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::vector<ReadoutId> ids;
      for (int id : subsets[i]) ids.emplace_back(id);
      slots[i] = set_report(ReadoutSet(std::move(ids)));
    }
  };

  const std::size_t chunk = (subsets.size() + threads - 1) / threads;
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(subsets.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  pool.clear();

  std::vector<SetReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace

ReadoutSet::ReadoutSet(std::vector<ReadoutId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (auto dup = std::adjacent_find(ids_.begin(), ids_.end()); dup != ids_.end()) {
    throw InputError("duplicate read-out id " + std::to_string(dup->value()));
  }
}

ReadoutSet::ReadoutSet(std::initializer_list<int> ids)
    : ReadoutSet([&] {
        std::vector<ReadoutId> v;
        for (int id : ids) v.emplace_back(id);
        return v;
      }()) {}

std::string ReadoutSet::to_string() const {
  std::string out;
  for (const ReadoutId& id : ids_) {
    if (!out.empty()) out += ',';
    out += std::to_string(id.value());
  }
  return out;
}

SetReport set_report(const ReadoutSet& s) {
  const DesignSystem d = assemble_design(s.ids(), /*include_trace=*/true);
  const NormalSystem ns = normal_system(d);
  SetReport report{s, 0, false, 0.0, {}};
  report.rank = matrix_rank(d.A);
  report.full_rank = report.rank == kNumParams;
  report.eigenvalues = sym_eigen(ns.C).eigenvalues;
  report.min_eigenvalue = report.eigenvalues.back();
  return report;
}

std::size_t minimum_readout_count(unsigned threads) {
  for (int k = 1; k <= kNumReadouts; ++k) {
    const auto reports = report_all(k, threads);
    if (std::any_of(reports.begin(), reports.end(), [](const SetReport& r) { return r.full_rank; })) {
      return static_cast<std::size_t>(k);
    }
  }
  throw NumericError("no read-out set reaches full rank");
}

std::vector<SetReport> enumerate_minimal_sets(int k, unsigned threads) {
  if (k < 1 || k > kNumReadouts) throw InputError("set size must be in 1..18, got " + std::to_string(k));
  auto reports = report_all(k, threads);
  std::erase_if(reports, [](const SetReport& r) { return !r.full_rank; });
  return reports;
}

std::vector<SetReport> rank_sets_by_conditioning(std::vector<SetReport> reports, std::size_t top) {
  std::erase_if(reports, [](const SetReport& r) { return !r.full_rank; });
  std::stable_sort(reports.begin(), reports.end(), [](const SetReport& a, const SetReport& b) {
    if (a.min_eigenvalue != b.min_eigenvalue) return a.min_eigenvalue > b.min_eigenvalue;
    return a.set < b.set;
  });
  if (top != 0 && reports.size() > top) reports.erase(reports.begin() + static_cast<std::ptrdiff_t>(top), reports.end());
  return reports;
}

const std::vector<ReadoutSet>& reference_five_sets() {
  static const std::vector<ReadoutSet> table = {
      {1, 2, 6, 12, 13}, {1, 2, 6, 12, 14}, {1, 2, 9, 12, 16},
      {1, 2, 9, 12, 17}, {1, 3, 5, 11, 13}, {1, 3, 5, 11, 15},
      {1, 3, 8, 11, 16}, {1, 3, 8, 11, 18}, {1, 5, 6, 11, 13},
      {1, 5, 6, 12, 13}, {1, 5, 11, 13, 16}, {1, 5, 11, 13, 17},
      {1, 6, 12, 13, 16}, {1, 6, 12, 13, 18}, {1, 8, 9, 11, 16},
      {1, 8, 9, 12, 16}, {1, 8, 11, 13, 16}, {1, 8, 11, 14, 16},
      {1, 9, 12, 13, 16}, {1, 9, 12, 15, 16}, {2, 3, 4, 10, 14},
      {2, 3, 4, 10, 15}, {2, 3, 7, 10, 17}, {2, 3, 7, 10, 18},
      {2, 4, 6, 10, 14}, {2, 4, 6, 12, 14}, {2, 4, 10, 14, 16},
      {2, 4, 10, 14, 17}, {2, 6, 12, 14, 17}, {2, 6, 12, 14, 18},
      {2, 7, 9, 10, 17}, {2, 7, 9, 12, 17}, {2, 7, 10, 13, 17},
      {2, 7, 10, 14, 17}, {2, 9, 12, 14, 17}, {2, 9, 12, 15, 17},
      {3, 4, 5, 10, 15}, {3, 4, 5, 11, 15}, {3, 4, 10, 15, 16},
      {3, 4, 10, 15, 18}, {3, 5, 11, 15, 17}, {3, 5, 11, 15, 18},
      {3, 7, 8, 10, 18}, {3, 7, 8, 11, 18}, {3, 7, 10, 13, 18},
      {3, 7, 10, 15, 18}, {3, 8, 11, 14, 18}, {3, 8, 11, 15, 18},
      {4, 5, 9, 15, 16}, {4, 5, 9, 15, 17}, {4, 6, 8, 14, 16},
      {4, 6, 8, 14, 18}, {4, 8, 9, 14, 16}, {4, 8, 9, 15, 16},
      {4, 8, 10, 14, 16}, {4, 8, 11, 14, 16}, {4, 9, 10, 15, 16},
      {4, 9, 12, 15, 16}, {5, 6, 7, 13, 17}, {5, 6, 7, 13, 18},
      {5, 7, 9, 13, 17}, {5, 7, 9, 15, 17}, {5, 7, 10, 13, 17},
      {5, 7, 11, 13, 17}, {5, 9, 11, 15, 17}, {5, 9, 12, 15, 17},
      {6, 7, 8, 13, 18}, {6, 7, 8, 14, 18}, {6, 7, 10, 13, 18},
      {6, 7, 12, 13, 18}, {6, 8, 11, 14, 18}, {6, 8, 12, 14, 18},
  };
  return table;
}

SetDiff diff_sets(const std::vector<SetReport>& found, const std::vector<ReadoutSet>& reference) {
  std::set<ReadoutSet> found_sets;
  for (const SetReport& r : found) found_sets.insert(r.set);
  const std::set<ReadoutSet> ref_sets(reference.begin(), reference.end());

  SetDiff diff;
  std::set_difference(ref_sets.begin(), ref_sets.end(), found_sets.begin(), found_sets.end(),
                      std::back_inserter(diff.missing));
  std::set_difference(found_sets.begin(), found_sets.end(), ref_sets.begin(), ref_sets.end(),
                      std::back_inserter(diff.extra));
  return diff;
}

}  // namespace tomoforge

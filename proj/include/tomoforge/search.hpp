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

#pragma once

// Exhaustive search over read-out subsets: which ones determine all 16
// parameters (with the trace row), and how well conditioned they are.

#include <string>
#include <vector>

#include "tomoforge/model.hpp"

namespace tomoforge {

class ReadoutSet {
 public:
  // Sorts; throws InputError on duplicates.
  explicit ReadoutSet(std::vector<ReadoutId> ids);
  ReadoutSet(std::initializer_list<int> ids);

  const std::vector<ReadoutId>& ids() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  std::string to_string() const;  // "1,2,6,12,13"

  auto operator<=>(const ReadoutSet&) const = default;
  bool operator==(const ReadoutSet&) const = default;

 private:
  std::vector<ReadoutId> ids_;
};

struct SetReport {
  ReadoutSet set;
  std::size_t rank = 0;  // of the design with the trace row
  bool full_rank = false;
  double min_eigenvalue = 0.0;
  std::vector<double> eigenvalues;  // of C, descending
};

// The trace row is always part of the analysed system.
SetReport set_report(const ReadoutSet& s);

// `threads` = 0 picks the hardware concurrency. Results never depend on it.
std::size_t minimum_readout_count(unsigned threads = 0);

// Every full-rank subset of size k, lexicographic by ids. Throws InputError
// unless 1 <= k <= 18.
std::vector<SetReport> enumerate_minimal_sets(int k, unsigned threads = 0);

// Full-rank reports by descending min eigenvalue, ties by ids. top = 0 keeps all.
std::vector<SetReport> rank_sets_by_conditioning(std::vector<SetReport> reports, std::size_t top = 0);

// The 72 five-read-out sets of the published minimal-set table.
const std::vector<ReadoutSet>& reference_five_sets();

struct SetDiff {
  std::vector<ReadoutSet> missing;  // in the reference, not found
  std::vector<ReadoutSet> extra;    // found, not in the reference
  bool empty() const { return missing.empty() && extra.empty(); }
};

SetDiff diff_sets(const std::vector<SetReport>& found, const std::vector<ReadoutSet>& reference);

}  // namespace tomoforge

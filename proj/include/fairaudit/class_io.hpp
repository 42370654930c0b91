// Copyright 2026 The FairAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRAUDIT_CLASS_IO_HPP_
#define FAIRAUDIT_CLASS_IO_HPP_

#include <cstdint>
#include <string>

#include "fairaudit/domain.hpp"

namespace fairaudit {

// Hypothesis-class file schema:
//   {"pi1": real,
//    "examples": [{"id": int, "group": 0|1, "p": real}, ...],
//    "hypotheses": [[+1,-1,...], ...]}
// where "p" is the conditional mass within the example's own group.

HypothesisClass load_class_json(const std::string& text);
HypothesisClass load_class_file(const std::string& path);
std::string class_to_json(const HypothesisClass& cls);
void save_class_file(const HypothesisClass& cls, const std::string& path);

/// Content hash of the class (domain masses, grouping, labelings); keys the
/// persisted cost cache.
std::uint64_t class_hash(const HypothesisClass& cls);

}  // namespace fairaudit

#endif  // FAIRAUDIT_CLASS_IO_HPP_

// Copyright 2026 The atree Authors.
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

#pragma once

#include <string_view>

#include "atree/analysis.hpp"
#include "atree/cli/tree_spec.hpp"
#include "atree/dense_oracle.hpp"

namespace atree::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Report skeleton shared by every command.
Json report_header(std::string_view command, Json inputs);

Json to_json(Complex z);
/// Kind name plus every field needed to re-check it.
Json to_json(const DivergenceCertificate& cert);
Json to_json(const SeriesVerdict& verdict);
Json to_json(const DomainVerdict& verdict, const TreeSpec& spec);

Json to_json(const DensityReport& r, const TreeSpec& spec);
Json to_json(const HyponormalityReport& r, const TreeSpec& spec);
Json to_json(const TrivialityCertificate& c, const TreeSpec& spec);
Json to_json(const BranchingReport& r, const TreeSpec& spec);
Json to_json(const NonClosabilityWitness& w, const TreeSpec& spec);
Json to_json(const dense::ComparisonReport& r);

}  // namespace atree::cli

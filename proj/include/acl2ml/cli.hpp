/* Copyright 2026 The acl2ml Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACL2ML_CLI_HPP_
#define ACL2ML_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "acl2ml/cluster.hpp"
#include "acl2ml/interp.hpp"
#include "acl2ml/valuation.hpp"

namespace acl2ml {

enum class ExitCode : int { Results = 0, Error = 1, NoResults = 2 };

struct Config {
  int granularity = 3;
  Algorithm algorithm = Algorithm::KMeans;
  std::size_t runs = 200;
  double threshold = 0.6;
  std::uint64_t seed = 0;
  TestBudget budget;
  bool json = false;
  std::optional<std::string> target;
  std::optional<std::string> out;
  bool use_cache = true;

  // Throws UsageError on the first out-of-range field.
  void validate() const;
};

std::string sha256_hex(std::string_view data);

nlohmann::json valuation_to_json(const ValuationResult& v);
// Throws UsageError on malformed input.
ValuationResult valuation_from_json(const nlohmann::json& j);

// `.acl2ml-cache.json` next to the corpus, keyed by the corpus digest, then
// by granularity and seed.
std::filesystem::path cache_path(const std::filesystem::path& corpus);
std::optional<ValuationResult> cache_load(const std::filesystem::path& corpus, const Corpus& c,
                                          const ValuationOptions& options);
// Best effort; an unwritable directory is not an error.
void cache_store(const std::filesystem::path& corpus, const Corpus& c, const ValuationOptions& options,
                 const ValuationResult& v);

// The whole front end. args excludes the program name. Reports go to `out`
// (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace acl2ml

#endif  // ACL2ML_CLI_HPP_

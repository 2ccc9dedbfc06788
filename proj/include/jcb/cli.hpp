// Copyright 2026 The jacobi-codebooks Authors.
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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jcb/char_sums.hpp"

namespace jcb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { kText, kCsv, kJson };

struct RunConfig {
  std::string subcommand;
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> ext_degrees;
  Variant variant = Variant::kHat;
  std::uint64_t a_log = 1;  // a = generator^a_log; the default is the generator
  OutputFormat format = OutputFormat::kText;
  std::string out_path;  // empty: standard output
  double tolerance = 1e-9;
  std::vector<std::uint64_t> q_list;
  // Complex multiply-adds allowed for one scan or verification pass.
  std::uint64_t budget = 1'000'000'000;
  std::uint64_t bound_n = 0;
  std::uint64_t bound_k = 0;
};

struct TableRow {
  std::uint64_t q = 0;
  std::optional<std::string> error;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::optional<double> imax;
  bool measured = false;
  double welch = 0.0;
  std::optional<double> ratio;
};

// One row of the parameter table; the scan runs when its cost fits the budget.
TableRow table_row(std::uint64_t q, const std::vector<std::uint32_t>& ext_degrees, Variant variant,
                   std::uint64_t a_log, std::uint64_t budget);

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_gen(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jcb::cli

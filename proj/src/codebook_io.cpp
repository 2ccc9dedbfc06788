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

#include "jcb/codebook_io.hpp"

#include <fmt/format.h>

#include <istream>
#include "json.hpp"
#include <ostream>

#include "jcb/errors.hpp"

namespace jcb {

void write_codebook_json(const Codebook& cb, std::ostream& out) {
  nlohmann::ordered_json doc;
  if (const auto& prov = cb.provenance()) {
    doc["p"] = prov->p;
    doc["m"] = prov->m;
    doc["ext_degrees"] = prov->ext_degrees;
    doc["variant"] = to_string(prov->variant);
    doc["a"] = prov->a_log;
  }
  doc["N"] = cb.size();
  doc["K"] = cb.dimension();
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < cb.size(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& v : cb.row(i)) row.push_back({v.real(), v.imag()});
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump() << '\n';
}

void write_codebook_csv(const Codebook& cb, std::ostream& out) {
  out << "row,col,re,im\n";
  for (std::size_t i = 0; i < cb.size(); ++i) {
    const auto row = cb.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << fmt::format("{},{},{},{}\n", i, j, row[j].real(), row[j].imag());
    }
  }
}

Codebook read_codebook_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
    const std::size_t n = doc.at("N").get<std::size_t>();
    const std::size_t k = doc.at("K").get<std::size_t>();
    const auto& rows = doc.at("rows");
    if (rows.size() != n) throw UsageError("row count does not match N");
    std::vector<Complex> data;
    data.reserve(n * k);
    for (const auto& row : rows) {
      if (row.size() != k) throw UsageError("row length does not match K");
      for (const auto& v : row) data.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    }
    std::optional<CodebookProvenance> prov;
    if (doc.contains("p")) {
      const auto variant = doc.at("variant").get<std::string>();
      if (variant != "hat" && variant != "tilde") throw UsageError("unknown variant " + variant);
      prov = CodebookProvenance{doc.at("p").get<std::uint32_t>(), doc.at("m").get<std::uint32_t>(),
                                doc.at("ext_degrees").get<std::vector<std::uint32_t>>(),
                                variant == "hat" ? Variant::kHat : Variant::kTilde,
                                doc.at("a").get<std::uint32_t>()};
    }
    return Codebook(n, k, std::move(data), std::move(prov));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed codebook JSON: ") + e.what());
  }
}

}  // namespace jcb

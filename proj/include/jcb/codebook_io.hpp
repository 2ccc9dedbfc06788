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

#include <iosfwd>

#include "jcb/codebook.hpp"

namespace jcb {

// {"p","m","ext_degrees","variant","a","N","K","rows"}; each row is a list of
// K [re, im] pairs. Doubles are written with round-trip precision.
void write_codebook_json(const Codebook& cb, std::ostream& out);
// Header "row,col,re,im" followed by N*K lines in row order.
void write_codebook_csv(const Codebook& cb, std::ostream& out);

Codebook read_codebook_json(std::istream& in);

}  // namespace jcb

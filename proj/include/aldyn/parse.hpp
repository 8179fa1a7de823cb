// Copyright 2026 The aldyn Authors
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

#include <string>
#include <string_view>

#include "aldyn/poly.hpp"

namespace aldyn {

/// Parses the inline polynomial syntax:
///
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' ['-'] integer | '^' '(' ['-'] integer ')')?
///   atom   := number | identifier | '(' expr ')'
///
/// `i` is the imaginary unit and `theta` the deformation parameter; every
/// other identifier must name a generator. Division is only by constants.
Poly parse_poly(std::string_view text, const Generators& gens);

/// Canonical text form, highest-order terms first: "q^2 + 2*q*p + p^2".
std::string to_text(const Poly& f);

/// Text form of a floating polynomial with the given significant digits.
std::string to_text(const NumPoly& f, int digits = 12);

}  // namespace aldyn

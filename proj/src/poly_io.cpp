// Copyright 2026 The modconv Authors.
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

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "modconv/polyring.hpp"

namespace modconv {
namespace {

std::string read_line(std::istream& in, std::size_t line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(line_no, "unexpected end of input");
  if (in.eof()) throw ParseError(line_no, "missing trailing newline");
  return line;
}

std::uint64_t parse_decimal(std::string_view token, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "expected a decimal integer, got '" +
                                  std::string(token) + "'");
  }
  return value;
}

}  // namespace

DensePoly read_poly(std::istream& in) {
  const std::uint64_t p = parse_decimal(read_line(in, 1), 1);
  std::optional<FourierPrime> field;
  try {
    field.emplace(p);
  } catch (const DomainError& e) {
    throw ParseError(1, e.what());
  }
  const std::uint64_t n = parse_decimal(read_line(in, 2), 2);
  const std::string body = read_line(in, 3);

  std::vector<std::uint64_t> coeffs;
  coeffs.reserve(n);
  std::string_view rest(body);
  if (n == 0) {
    if (!rest.empty()) throw ParseError(3, "expected no coefficients");
  } else {
    while (true) {
      const auto space = rest.find(' ');
      const std::uint64_t c = parse_decimal(rest.substr(0, space), 3);
      if (c >= p) {
        throw ParseError(3, "coefficient " + std::to_string(c) +
                                " is not a residue mod " + std::to_string(p));
      }
      coeffs.push_back(c);
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
    if (coeffs.size() != n) {
      throw ParseError(3, "expected " + std::to_string(n) + " coefficients, got " +
                              std::to_string(coeffs.size()));
    }
  }
  return DensePoly(*field, std::move(coeffs));
}

void write_poly(std::ostream& out, const DensePoly& poly) {
  out << poly.field().modulus() << '\n' << poly.size() << '\n';
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i != 0) out << ' ';
    out << poly.coeffs()[i];
  }
  out << '\n';
}

}  // namespace modconv

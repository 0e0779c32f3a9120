// Copyright 2026 The nosig Authors
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

// Plain-text operator files:
//
//     # comment lines start with '#'
//     dim 4
//     label CNOT            (optional)
//     1 0
//     0 0
//     ...                   dim*dim "re im" pairs, row-major
//
// Numbers are decimal strings parsed with std::from_chars, which rounds to the
// nearest double. Output uses the shortest representation that round-trips.

#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nosig/core/operator.hpp"

namespace nosig {

namespace detail {

inline double parse_double(std::string_view token) {
    double value = 0.0;
    const char *first = token.data();
    const char *last = token.data() + token.size();
    if (!token.empty() && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    NOSIG_REQUIRE(ec == std::errc() && ptr == last, ErrorKind::ParseError,
                  "not a number: '" + std::string(token) + "'");
    return value;
}

inline std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

} // namespace detail

inline Operator parse_operator(std::istream &in) {
    std::vector<std::string> tokens;
    std::string line;
    std::string label;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        if (tok == "label") {
            std::getline(ls >> std::ws, label);
            continue;
        }
        tokens.push_back(tok);
        while (ls >> tok) {
            tokens.push_back(tok);
        }
    }
    NOSIG_REQUIRE(tokens.size() >= 2 && tokens[0] == "dim", ErrorKind::ParseError,
                  "operator file must start with 'dim <n>'");
    const double dimValue = detail::parse_double(tokens[1]);
    NOSIG_REQUIRE(dimValue >= 1 && dimValue == static_cast<double>(
                                                   static_cast<long>(dimValue)),
                  ErrorKind::ParseError, "dim must be a positive integer");
    const auto dim = static_cast<Eigen::Index>(dimValue);
    const std::size_t expected = 2 + 2 * static_cast<std::size_t>(dim * dim);
    NOSIG_REQUIRE(tokens.size() == expected, ErrorKind::ParseError,
                  "expected " + std::to_string(dim * dim) +
                      " (re, im) pairs, found " +
                      std::to_string((tokens.size() - 2) / 2) +
                      (tokens.size() % 2 != 0 ? " and a dangling value" : ""));
    Matrix m(dim, dim);
    std::size_t t = 2;
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double re = detail::parse_double(tokens[t++]);
            const double im = detail::parse_double(tokens[t++]);
            m(r, c) = cplx(re, im);
        }
    }
    return Operator(std::move(m), label);
}

inline Operator parse_operator(const std::string &text) {
    std::istringstream in(text);
    return parse_operator(in);
}

inline Operator load_operator(const std::string &path) {
    std::ifstream in(path);
    NOSIG_REQUIRE(in.good(), ErrorKind::ParseError, "cannot open " + path);
    return parse_operator(in);
}

inline void write_operator(std::ostream &out, const Operator &op) {
    out << "dim " << op.dim() << '\n';
    if (!op.label().empty()) {
        out << "label " << op.label() << '\n';
    }
    for (std::size_t r = 0; r < op.dim(); ++r) {
        for (std::size_t c = 0; c < op.dim(); ++c) {
            out << detail::format_double(op(r, c).real()) << ' '
                << detail::format_double(op(r, c).imag()) << '\n';
        }
    }
}

inline std::string to_text(const Operator &op) {
    std::ostringstream out;
    write_operator(out, op);
    return out.str();
}

} // namespace nosig

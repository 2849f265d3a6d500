// Copyright 2026 The algpot Authors
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

#include "algpot/complex_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace algpot {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("bad complex number: '" + std::string(whole) + "'");
  return v;
}

// Signed real or imaginary term; "i", "+i", "-i" have unit magnitude.
double parse_term(std::string_view s, std::string_view whole) {
  if (s == "" || s == "+") return 1.0;
  if (s == "-") return -1.0;
  if (s.front() == '+') s.remove_prefix(1);
  return parse_real(s, whole);
}

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::string spaced = line;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(spaced);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex number");
  if (s.front() == '(' && s.back() == ')') {
    const auto inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw std::invalid_argument("bad complex number: '" + std::string(s) + "'");
    return {parse_real(trim(inner.substr(0, comma)), s), parse_real(trim(inner.substr(comma + 1)), s)};
  }
  if (s.back() != 'i') return {parse_real(s, s), 0.0};
  const auto body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_term(body, s)};
  return {parse_real(body.substr(0, split), s), parse_term(body.substr(split), s)};
}

std::string format_complex(Complex z) {
  auto fmt = [](double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
  };
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return fmt(re);
  const std::string imag = fmt(im) + "i";
  if (re == 0.0) return imag;
  return fmt(re) + (im > 0 ? "+" : "") + imag;
}

std::vector<CVector> parse_vectors(std::string_view text) {
  std::vector<CVector> out;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto fields = split_fields(strip_comment(line));
    if (fields.empty()) continue;
    CVector v(static_cast<Eigen::Index>(fields.size()));
    try {
      for (std::size_t i = 0; i < fields.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(fields[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    out.push_back(std::move(v));
  }
  return out;
}

StateInput parse_state(std::string_view text) {
  StateInput st;
  bool have_q = false;
  bool have_p = false;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = split_fields(strip_comment(line));
    if (fields.empty()) continue;
    const std::string key = fields.front();
    CVector v(static_cast<Eigen::Index>(fields.size() - 1));
    try {
      for (std::size_t i = 1; i < fields.size(); ++i) v(static_cast<Eigen::Index>(i - 1)) = parse_complex(fields[i]);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (key == "q") {
      st.q = std::move(v);
      have_q = true;
    } else if (key == "p") {
      st.p = std::move(v);
      have_p = true;
    } else if (key == "w") {
      st.w = std::move(v);
    } else {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  if (!have_q || !have_p) throw std::invalid_argument("state needs both 'q' and 'p' lines");
  if (st.q.size() != st.p.size()) throw std::invalid_argument("'q' and 'p' lengths differ");
  return st;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace algpot

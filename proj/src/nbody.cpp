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

#include "algpot/nbody.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "algpot/spectrum.hpp"

namespace algpot {

namespace {

std::string qname(std::size_t i, std::size_t a) { return "q" + std::to_string(i + 1) + "_" + std::to_string(a + 1); }
std::string rname(std::size_t i, std::size_t j) { return "r" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

double mean_pair_product(const NBodyConfig& cfg) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      sum += Rational(cfg.masses[i] * cfg.masses[j]).get_d();
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

// Full (q, r) point from planar positions (x, y) per body.
CVector embed(const NBodyConfig& cfg, const std::vector<std::array<double, 2>>& pos) {
  const std::size_t nq = cfg.n * cfg.d;
  CVector x = CVector::Zero(static_cast<Eigen::Index>(nq + cfg.n * (cfg.n - 1) / 2));
  std::array<double, 2> centre{0.0, 0.0};
  for (const auto& p : pos) {
    centre[0] += p[0] / static_cast<double>(cfg.n);
    centre[1] += p[1] / static_cast<double>(cfg.n);
  }
  for (std::size_t i = 0; i < cfg.n; ++i) {
    x(static_cast<Eigen::Index>(i * cfg.d)) = pos[i][0] - centre[0];
    x(static_cast<Eigen::Index>(i * cfg.d + 1)) = pos[i][1] - centre[1];
  }
  std::size_t k = nq;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const double dx = pos[i][0] - pos[j][0];
      const double dy = pos[i][1] - pos[j][1];
      x(static_cast<Eigen::Index>(k++)) = -std::hypot(dx, dy);
    }
  }
  return x;
}

}  // namespace

void NBodyConfig::check() const {
  if (n < 2) throw std::invalid_argument("n-body problem needs n >= 2");
  if (d == 1) {
    throw std::invalid_argument(
        "dimension d=1 rejected: the ideal of mutual distances is prime for d>=2 but not for d=1");
  }
  if (d < 2) throw std::invalid_argument("n-body problem needs d >= 2");
  if (masses.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " masses, got " + std::to_string(masses.size()));
  }
  for (const auto& m : masses) {
    if (m <= 0) throw std::invalid_argument("masses must be positive");
  }
}

std::vector<Rational> parse_masses(std::string_view text) {
  std::vector<Rational> out;
  std::string s(text);
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    const bool decimal = tok.find_first_of(".eE") != std::string::npos;
    if (!decimal) {
      Rational r;
      if (r.set_str(tok, 10) != 0) throw std::invalid_argument("bad mass '" + tok + "'");
      r.canonicalize();
      out.push_back(r);
      continue;
    }
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad mass '" + tok + "'");
    }
    const auto r = rationalize(Complex(v, 0.0), kMassTol * std::max(1.0, std::fabs(v)), 1000000000000LL);
    if (!r) throw std::invalid_argument("mass '" + tok + "' has no rational form within tolerance");
    out.push_back(*r);
  }
  return out;
}

std::string problem_text(const NBodyConfig& cfg) {
  cfg.check();
  std::ostringstream os;
  os << "# nbody n=" << cfg.n << " dim=" << cfg.d << " masses=";
  for (std::size_t i = 0; i < cfg.n; ++i) os << (i ? "," : "") << cfg.masses[i].get_str();
  os << "\nvars";
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t a = 0; a < cfg.d; ++a) os << ' ' << qname(i, a);
  }
  os << '\n';
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      os << "ext " << rname(i, j) << " : " << rname(i, j) << "^2";
      for (std::size_t a = 0; a < cfg.d; ++a) os << " - (" << qname(i, a) << " - " << qname(j, a) << ")^2";
      os << '\n';
    }
  }
  os << "potential";
  bool first = true;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::size_t j = i + 1; j < cfg.n; ++j) {
      const Rational mm = cfg.masses[i] * cfg.masses[j];
      os << (first ? " " : " + ") << mm.get_str() << "/" << rname(i, j);
      first = false;
    }
  }
  os << '\n';
  return os.str();
}

AlgebraicSetup build(const NBodyConfig& cfg) { return parse_setup(problem_text(cfg)); }

SeedSet central_config_seeds(const NBodyConfig& cfg) {
  cfg.check();
  SeedSet out;
  const double rho3 = static_cast<double>(cfg.n) * mean_pair_product(cfg);
  if (cfg.n == 2) {
    const double a = std::cbrt(rho3);
    out.seeds.push_back(embed(cfg, {{a / 2, 0.0}, {-a / 2, 0.0}}));
    out.labels.emplace_back("opposition");
  } else if (cfg.n == 3) {
    const double side = std::cbrt(rho3);
    const double h = side * std::sqrt(3.0) / 2.0;
    out.seeds.push_back(embed(cfg, {{-side / 2, 0.0}, {side / 2, 0.0}, {0.0, h}}));
    out.labels.emplace_back("equilateral");
    // Equal masses: spacing a with a^3 = 5/4 = (5/12) rho^3.
    const double a = std::cbrt(5.0 * rho3 / 12.0);
    for (std::size_t middle = 0; middle < 3; ++middle) {
      std::vector<std::array<double, 2>> pos(3);
      std::size_t slot = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        if (i == middle) {
          pos[i] = {0.0, 0.0};
        } else {
          pos[i] = {slot++ == 0 ? -a : a, 0.0};
        }
      }
      out.seeds.push_back(embed(cfg, pos));
      out.labels.push_back("collinear, body " + std::to_string(middle + 1) + " in the middle");
    }
  } else {
    out.notice = "no built-in central configuration seeds for n=" + std::to_string(cfg.n) +
                 "; supply seeds or rely on random starts";
  }
  return out;
}

}  // namespace algpot

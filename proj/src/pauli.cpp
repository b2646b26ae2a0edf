// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/pauli.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace eigdecoh {

std::optional<PauliLetter> parse_pauli_letter(std::string_view s) {
  if (s == "x" || s == "X") return PauliLetter::X;
  if (s == "y" || s == "Y") return PauliLetter::Y;
  if (s == "z" || s == "Z") return PauliLetter::Z;
  if (s == "+") return PauliLetter::Plus;
  if (s == "-") return PauliLetter::Minus;
  return std::nullopt;
}

char to_char(PauliLetter l) { return static_cast<char>(l); }

std::optional<std::pair<Config, Complex>> act(const PauliTerm& term, Config c) {
  Complex amp = term.coeff;
  for (const auto& f : term.factors) {
    const Config mask = Config{1} << f.site;
    const bool up = (c & mask) != 0;
    switch (f.letter) {
      case PauliLetter::Z:
        if (!up) amp = -amp;
        break;
      case PauliLetter::Plus:
        if (up) return std::nullopt;
        c |= mask;
        break;
      case PauliLetter::Minus:
        if (!up) return std::nullopt;
        c &= ~mask;
        break;
      case PauliLetter::X:
        c ^= mask;
        break;
      case PauliLetter::Y:
        // sigma^y|up> = i|down>, sigma^y|down> = -i|up>
        amp *= up ? Complex(0.0, 1.0) : Complex(0.0, -1.0);
        c ^= mask;
        break;
    }
  }
  return std::make_pair(c, amp);
}

std::vector<int> magnetization_shifts(const PauliTerm& term) {
  std::set<int> shifts{0};
  for (const auto& f : term.factors) {
    std::set<int> next;
    for (int s : shifts) {
      switch (f.letter) {
        case PauliLetter::Z: next.insert(s); break;
        case PauliLetter::Plus: next.insert(s + 1); break;
        case PauliLetter::Minus: next.insert(s - 1); break;
        case PauliLetter::X:
        case PauliLetter::Y:
          next.insert(s + 1);
          next.insert(s - 1);
          break;
      }
    }
    shifts = std::move(next);
  }
  return {shifts.begin(), shifts.end()};
}

std::vector<int> magnetization_shifts(const PauliStringSum& op) {
  std::set<int> all;
  for (const auto& t : op.terms) {
    for (int s : magnetization_shifts(t)) all.insert(s);
  }
  return {all.begin(), all.end()};
}

std::vector<int> support(const PauliStringSum& op) {
  std::set<int> sites;
  for (const auto& t : op.terms) {
    for (const auto& f : t.factors) sites.insert(f.site);
  }
  return {sites.begin(), sites.end()};
}

PauliTerm adjoint(const PauliTerm& term) {
  PauliTerm out{std::conj(term.coeff), term.factors};
  for (auto& f : out.factors) {
    if (f.letter == PauliLetter::Plus) {
      f.letter = PauliLetter::Minus;
    } else if (f.letter == PauliLetter::Minus) {
      f.letter = PauliLetter::Plus;
    }
  }
  return out;
}

namespace {

using StringKey = std::vector<std::pair<int, char>>;

StringKey key_of(const PauliTerm& t) {
  StringKey k;
  k.reserve(t.factors.size());
  for (const auto& f : t.factors) k.emplace_back(f.site, to_char(f.letter));
  std::sort(k.begin(), k.end());
  for (std::size_t i = 1; i < k.size(); ++i) {
    if (k[i].first == k[i - 1].first) {
      throw std::invalid_argument(fmt::format("site {} appears twice in one Pauli term", k[i].first));
    }
  }
  return k;
}

}  // namespace

PauliStringSum canonical(const PauliStringSum& op, double tol) {
  std::map<StringKey, Complex> merged;
  for (const auto& t : op.terms) merged[key_of(t)] += t.coeff;
  PauliStringSum out;
  for (const auto& [k, c] : merged) {
    if (std::abs(c) <= tol) continue;
    PauliTerm t{c, {}};
    for (const auto& [site, letter] : k) t.factors.push_back({site, *parse_pauli_letter(std::string(1, letter))});
    out.terms.push_back(std::move(t));
  }
  return out;
}

bool is_hermitian(const PauliStringSum& op, double tol) {
  PauliStringSum adj;
  for (const auto& t : op.terms) adj.terms.push_back(adjoint(t));
  const auto a = canonical(op, tol);
  const auto b = canonical(adj, tol);
  if (a.terms.size() != b.terms.size()) return false;
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    if (a.terms[i].factors != b.terms[i].factors) return false;
    if (std::abs(a.terms[i].coeff - b.terms[i].coeff) > tol) return false;
  }
  return true;
}

PauliStringSum operator*(Complex s, const PauliStringSum& op) {
  PauliStringSum out = op;
  for (auto& t : out.terms) t.coeff *= s;
  return out;
}

PauliStringSum operator+(const PauliStringSum& a, const PauliStringSum& b) {
  PauliStringSum out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  return out;
}

std::string to_string(const PauliStringSum& op) {
  std::string s;
  for (const auto& t : op.terms) {
    if (!s.empty()) s += " + ";
    s += fmt::format("({}{:+}i)", t.coeff.real(), t.coeff.imag());
    for (const auto& f : t.factors) s += fmt::format(" s{}_{}", to_char(f.letter), f.site);
  }
  return s.empty() ? "0" : s;
}

}  // namespace eigdecoh

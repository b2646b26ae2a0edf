// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigdecoh/types.hpp"

namespace eigdecoh {

enum class PauliLetter : char { X = 'x', Y = 'y', Z = 'z', Plus = '+', Minus = '-' };

std::optional<PauliLetter> parse_pauli_letter(std::string_view s);
char to_char(PauliLetter l);

struct PauliFactor {
  int site = 0;
  PauliLetter letter = PauliLetter::Z;
  bool operator==(const PauliFactor&) const = default;
};

/// coeff * prod(factors); each site appears at most once.
struct PauliTerm {
  Complex coeff{1.0, 0.0};
  std::vector<PauliFactor> factors;
  bool operator==(const PauliTerm&) const = default;
};

/// Symbolic operator: a sum of Pauli strings, applied on the fly to basis
/// configurations without forming a matrix.
struct PauliStringSum {
  std::vector<PauliTerm> terms;
  bool operator==(const PauliStringSum&) const = default;
};

/// Image of a basis configuration under one term, or nullopt when a raising or
/// lowering factor annihilates it.
std::optional<std::pair<Config, Complex>> act(const PauliTerm& term, Config c);

/// Change in the number of up spins the term can produce. For terms with
/// x or y factors this is a set; returned sorted and unique.
std::vector<int> magnetization_shifts(const PauliTerm& term);
std::vector<int> magnetization_shifts(const PauliStringSum& op);

/// Sorted list of sites touched by any term.
std::vector<int> support(const PauliStringSum& op);

/// Adjoint term: conjugate coefficient, swap + and -.
PauliTerm adjoint(const PauliTerm& term);

/// Canonical form: factors sorted by site, equal strings merged, zero
/// coefficients (|c| <= tol) dropped, terms sorted.
PauliStringSum canonical(const PauliStringSum& op, double tol = 0.0);

/// Term set closed under conjugation (checked symbolically on the canonical form).
bool is_hermitian(const PauliStringSum& op, double tol = 1e-12);

PauliStringSum operator*(Complex s, const PauliStringSum& op);
PauliStringSum operator+(const PauliStringSum& a, const PauliStringSum& b);

std::string to_string(const PauliStringSum& op);

}  // namespace eigdecoh

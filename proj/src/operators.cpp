// Copyright 2026 The eigdecoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "eigdecoh/operators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace eigdecoh {

CVector SectorBlockOperator::apply(std::span<const Complex> x) const {
  if (x.size() != cols) throw std::invalid_argument("sector block applied to vector of wrong dimension");
  CVector y = CVector::Zero(static_cast<Eigen::Index>(rows));
  for (const auto& e : entries) y[e.row] += e.value * x[e.col];
  return y;
}

CMatrix SectorBlockOperator::to_dense() const {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (const auto& e : entries) m(e.row, e.col) += e.value;
  return m;
}

namespace {

void finalize(std::vector<SectorBlockOperator::Entry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  std::vector<SectorBlockOperator::Entry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const auto& e) { return e.value == Complex(0.0, 0.0); });
  entries = std::move(merged);
}

}  // namespace

std::vector<SectorBlockOperator> heisenberg_blocks(const SpinGraph& g) {
  std::vector<SectorBlockOperator> blocks;
  blocks.reserve(static_cast<std::size_t>(g.n_sites) + 1);
  for (int k = 0; k <= g.n_sites; ++k) {
    const SectorBasis basis(g.n_sites, k);
    SectorBlockOperator b;
    b.source_n_up = b.target_n_up = k;
    b.rows = b.cols = basis.size();
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const Config c = basis[col];
      double diag = 0.0;
      for (auto [i, j] : g.edges) {
        const bool up_i = (c >> i) & 1u;
        const bool up_j = (c >> j) & 1u;
        if (up_i == up_j) {
          diag += 0.5;
        } else {
          diag -= 0.5;
          // 1/2 (xx + yy) = s+ s- + s- s+ swaps an anti-aligned pair with amplitude 1.
          const Config flipped = c ^ ((Config{1} << i) | (Config{1} << j));
          b.entries.push_back({static_cast<std::uint32_t>(basis.rank(flipped)), static_cast<std::uint32_t>(col),
                               Complex(1.0, 0.0)});
        }
      }
      b.entries.push_back({static_cast<std::uint32_t>(col), static_cast<std::uint32_t>(col), Complex(diag, 0.0)});
    }
    finalize(b.entries);
    blocks.push_back(std::move(b));
  }
  return blocks;
}

PauliStringSum heisenberg_pauli_sum(const SpinGraph& g) {
  PauliStringSum h;
  for (auto [i, j] : g.edges) {
    for (PauliLetter l : {PauliLetter::X, PauliLetter::Y, PauliLetter::Z}) {
      h.terms.push_back({Complex(0.5, 0.0), {{i, l}, {j, l}}});
    }
  }
  return h;
}

PauliStringSum build_witness_W(std::span<const int> sites) {
  if (sites.empty()) throw std::invalid_argument("witness W needs at least one site");
  PauliTerm raise{Complex(1.0, 0.0), {}};
  PauliTerm lower{Complex(1.0, 0.0), {}};
  for (int s : sites) {
    raise.factors.push_back({s, PauliLetter::Plus});
    lower.factors.push_back({s, PauliLetter::Minus});
  }
  return PauliStringSum{{raise, lower}};
}

PauliStringSum build_witness_W(int M) {
  std::vector<int> sites(static_cast<std::size_t>(std::max(M, 0)));
  std::iota(sites.begin(), sites.end(), 0);
  return build_witness_W(sites);
}

PauliStringSum build_classical_C(std::span<const int> sites) {
  if (sites.empty()) throw std::invalid_argument("operator C needs at least one site");
  PauliTerm t{Complex(1.0, 0.0), {}};
  for (int s : sites) t.factors.push_back({s, PauliLetter::Z});
  return PauliStringSum{{t}};
}

PauliStringSum build_classical_C(int M) {
  std::vector<int> sites(static_cast<std::size_t>(std::max(M, 0)));
  std::iota(sites.begin(), sites.end(), 0);
  return build_classical_C(sites);
}

PauliStringSum build_operator(const OperatorSpec& spec, const SpinGraph& g) {
  switch (spec.kind) {
    case OperatorKind::W: return build_witness_W(g.subsystem);
    case OperatorKind::C: return build_classical_C(g.subsystem);
    case OperatorKind::PauliSum: return spec.terms;
  }
  throw std::logic_error("unhandled operator kind");
}

CVector apply(const PauliStringSum& op, std::span<const Complex> v, int n_sites) {
  const std::size_t dim = std::size_t{1} << n_sites;
  if (v.size() != dim) throw std::invalid_argument(fmt::format("vector length {} != 2^{}", v.size(), n_sites));
  for (int s : support(op)) {
    if (s >= n_sites) throw std::invalid_argument(fmt::format("operator acts on site {} beyond n_sites", s));
  }
  CVector y = CVector::Zero(static_cast<Eigen::Index>(dim));
  for (Config c = 0; c < dim; ++c) {
    if (v[c] == Complex(0.0, 0.0)) continue;
    for (const auto& t : op.terms) {
      if (auto img = act(t, c)) y[static_cast<Eigen::Index>(img->first)] += img->second * v[c];
    }
  }
  return y;
}

SectorBlockOperator sector_block(const PauliStringSum& op, const SectorBasis& source, const SectorBasis& target) {
  if (source.n_sites() != target.n_sites()) throw std::invalid_argument("sector bases of different sizes");
  const int shift = target.n_up() - source.n_up();
  const auto shifts = magnetization_shifts(op);
  if (!std::binary_search(shifts.begin(), shifts.end(), shift)) {
    throw std::invalid_argument(
        fmt::format("operator cannot map sector {} to sector {}", source.n_up(), target.n_up()));
  }
  SectorBlockOperator b;
  b.source_n_up = source.n_up();
  b.target_n_up = target.n_up();
  b.rows = target.size();
  b.cols = source.size();
  for (std::size_t col = 0; col < source.size(); ++col) {
    for (const auto& t : op.terms) {
      auto img = act(t, source[col]);
      if (!img || !target.contains(img->first)) continue;
      b.entries.push_back(
          {static_cast<std::uint32_t>(target.rank(img->first)), static_cast<std::uint32_t>(col), img->second});
    }
  }
  finalize(b.entries);
  return b;
}

CVector apply(const PauliStringSum& op, std::span<const Complex> v, const SectorBasis& source,
              const SectorBasis& target) {
  return sector_block(op, source, target).apply(v);
}

CMatrix local_matrix(const PauliStringSum& op, std::span<const int> sites) {
  const int m = static_cast<int>(sites.size());
  if (m > 12) throw std::invalid_argument("local operator space limited to 12 sites");
  const int max_site = *std::max_element(sites.begin(), sites.end());
  std::vector<int> slot(static_cast<std::size_t>(max_site) + 1, -1);
  for (int k = 0; k < m; ++k) slot[sites[k]] = k;
  // Relabel sites to local bit positions, then act on local configurations.
  PauliStringSum local;
  for (const auto& t : op.terms) {
    PauliTerm lt{t.coeff, {}};
    for (const auto& f : t.factors) {
      if (f.site > max_site || slot[f.site] < 0) {
        throw std::invalid_argument(fmt::format("operator acts on site {} outside the given site set", f.site));
      }
      lt.factors.push_back({slot[f.site], f.letter});
    }
    local.terms.push_back(std::move(lt));
  }
  const std::size_t dim = std::size_t{1} << m;
  CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (Config c = 0; c < dim; ++c) {
    for (const auto& t : local.terms) {
      if (auto img = act(t, c)) a(static_cast<Eigen::Index>(img->first), static_cast<Eigen::Index>(c)) += img->second;
    }
  }
  return a;
}

CMatrix subsystem_matrix(const PauliStringSum& op, const SpinGraph& g) { return local_matrix(op, g.subsystem); }

double operator_norm(const PauliStringSum& op, int n_sites) {
  if (!is_hermitian(op)) throw std::invalid_argument("operator is not Hermitian");
  const auto sites = support(op);
  if (sites.empty()) {
    Complex c{0.0, 0.0};
    for (const auto& t : op.terms) c += t.coeff;
    return std::abs(c);
  }
  if (sites.back() >= n_sites) throw std::invalid_argument("operator acts beyond n_sites");
  const CMatrix a = local_matrix(op, sites);
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace eigdecoh

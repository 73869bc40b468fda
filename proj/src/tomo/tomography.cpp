// Copyright 2026 The mcm-lab Authors
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

#include "mcmlab/tomo/tomography.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/rng.hpp"

namespace mcmlab::tomo {

using core::Matrix;
using core::PauliTransferMap;
using core::RealMatrix;

namespace {

struct SingleFiducial {
  const char* label;
  core::Vector ket;
};

std::vector<SingleFiducial> single_fiducials() {
  const double r = 1.0 / std::sqrt(2.0);
  core::Vector yp(2), ym(2);
  yp << r, core::cplx(0, r);
  ym << r, core::cplx(0, -r);
  return {{"Z+", core::ket(0)}, {"Z-", core::ket(1)},  {"X+", core::ket_plus()},
          {"X-", core::ket_minus()}, {"Y+", yp}, {"Y-", ym}};
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError("cannot parse " + what + " '" + text + "'");
  }
  return v;
}

// Cell probabilities of one (prep, setting) circuit: index 4 k + result.
std::vector<double> circuit_probabilities(const QuantumInstrument& inst,
                                          const FiducialSet& f, int prep, int setting) {
  std::vector<double> probs;
  for (int k = 0; k < 2; ++k) {
    const Matrix out = core::apply_ptm(inst.maps[k], f.preps[prep]);
    for (std::size_t e = 0; e < f.effects.size(); ++e) {
      if (f.effect_setting[e] != setting) continue;
      probs.push_back((f.effects[e] * out).trace().real());
    }
  }
  return probs;
}

}  // namespace

int FiducialSet::prep_index(std::string_view label) const {
  auto it = std::find(prep_labels.begin(), prep_labels.end(), label);
  if (it == prep_labels.end()) return -1;
  return static_cast<int>(it - prep_labels.begin());
}

int FiducialSet::effect_index(std::string_view label) const {
  auto it = std::find(effect_labels.begin(), effect_labels.end(), label);
  if (it == effect_labels.end()) return -1;
  return static_cast<int>(it - effect_labels.begin());
}

const FiducialSet& standard_fiducials() {
  static const FiducialSet kSet = [] {
    FiducialSet f;
    const auto singles = single_fiducials();
    for (const auto& d : singles) {
      for (const auto& a : singles) {
        f.prep_labels.push_back(std::string(d.label) + "." + a.label);
        const core::Vector psi = core::kron(d.ket, a.ket);
        f.preps.push_back(psi * psi.adjoint());
      }
    }
    const char* axes[] = {"X", "Y", "Z"};
    auto eigen = [&](const std::string& axis, char sign) {
      for (const auto& s : singles) {
        if (std::string(s.label) == axis + sign) return s.ket;
      }
      throw PreconditionError("unknown fiducial");
    };
    int setting = 0;
    for (const char* da : axes) {
      for (const char* aa : axes) {
        f.setting_labels.push_back(std::string(da) + "." + aa);
        for (char ds : {'+', '-'}) {
          for (char as : {'+', '-'}) {
            const core::Vector psi = core::kron(eigen(da, ds), eigen(aa, as));
            f.effect_labels.push_back(std::string(da) + ds + "." + aa + as);
            f.effects.push_back(psi * psi.adjoint());
            f.effect_setting.push_back(setting);
          }
        }
        ++setting;
      }
    }
    return f;
  }();
  return kSet;
}

CountTable exact_probabilities(const QuantumInstrument& inst, const FiducialSet& f) {
  CountTable table;
  for (std::size_t p = 0; p < f.preps.size(); ++p) {
    for (int k = 0; k < 2; ++k) {
      const Matrix out = core::apply_ptm(inst.maps[k], f.preps[p]);
      for (std::size_t e = 0; e < f.effects.size(); ++e) {
        double prob = (f.effects[e] * out).trace().real();
        if (prob < 0.0 && prob > -1e-12) prob = 0.0;  // roundoff on zero-probability cells
        table.push_back({f.prep_labels[p], f.effect_labels[e], k, prob});
      }
    }
  }
  return table;
}

CountTable sample_counts(const QuantumInstrument& inst, std::uint64_t shots, std::uint64_t seed,
                         std::string_view experiment, const FiducialSet& f) {
  CountTable table;
  const int n_settings = static_cast<int>(f.setting_labels.size());
  for (std::size_t p = 0; p < f.preps.size(); ++p) {
    for (int s = 0; s < n_settings; ++s) {
      std::vector<double> probs = circuit_probabilities(inst, f, static_cast<int>(p), s);
      double total = 0.0;
      for (double& x : probs) {
        x = std::max(0.0, x);
        total += x;
      }
      std::vector<double> cdf(probs.size());
      double acc = 0.0;
      for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i] / total;
        cdf[i] = acc;
      }
      std::vector<std::uint64_t> tally(probs.size(), 0);
      const std::uint32_t stream = core::stream_id(experiment, p * n_settings + s);
      for (std::uint64_t shot = 0; shot < shots; ++shot) {
        core::ShotStream rng(seed, stream, shot);
        const double u = rng.uniform();
        std::size_t cell = 0;
        while (cell + 1 < cdf.size() && u >= cdf[cell]) ++cell;
        ++tally[cell];
      }
      std::size_t cell = 0;
      for (int k = 0; k < 2; ++k) {
        for (std::size_t e = 0; e < f.effects.size(); ++e) {
          if (f.effect_setting[e] != s) continue;
          table.push_back({f.prep_labels[p], f.effect_labels[e], k,
                           static_cast<double>(tally[cell++])});
        }
      }
    }
  }
  return table;
}

QuantumInstrument linear_inversion(const CountTable& counts, const FiducialSet& f) {
  const int n_prep = static_cast<int>(f.preps.size());
  const int n_eff = static_cast<int>(f.effects.size());
  const int n_set = static_cast<int>(f.setting_labels.size());
  std::array<RealMatrix, 2> freq{RealMatrix::Zero(n_eff, n_prep), RealMatrix::Zero(n_eff, n_prep)};
  RealMatrix totals = RealMatrix::Zero(n_set, n_prep);
  for (const CountRow& row : counts) {
    const int p = f.prep_index(row.prep_fiducial);
    const int e = f.effect_index(row.meas_fiducial);
    if (p < 0) throw PreconditionError("unknown preparation fiducial '" + row.prep_fiducial + "'");
    if (e < 0) throw PreconditionError("unknown measurement fiducial '" + row.meas_fiducial + "'");
    if (row.outcome != 0 && row.outcome != 1) throw PreconditionError("outcome must be 0 or 1");
    if (row.count < 0.0 || !std::isfinite(row.count)) {
      throw PreconditionError("counts must be finite and non-negative");
    }
    freq[row.outcome](e, p) += row.count;
    totals(f.effect_setting[e], p) += row.count;
  }
  for (int p = 0; p < n_prep; ++p) {
    for (int e = 0; e < n_eff; ++e) {
      const double t = totals(f.effect_setting[e], p);
      if (t <= 0.0) {
        throw PreconditionError("no counts for preparation " + f.prep_labels[p] + " setting " +
                                f.setting_labels[f.effect_setting[e]]);
      }
      freq[0](e, p) /= t;
      freq[1](e, p) /= t;
    }
  }
  // p = sum_ij Tr(E s_i) R_ij Tr(s_j rho).
  const int n_pauli = 16;
  RealMatrix emat(n_eff, n_pauli), rmat(n_pauli, n_prep);
  for (int i = 0; i < n_pauli; ++i) {
    const Matrix sigma = core::pauli_operator(i, 2) / 2.0;
    for (int e = 0; e < n_eff; ++e) emat(e, i) = (f.effects[e] * sigma).trace().real();
    for (int p = 0; p < n_prep; ++p) rmat(i, p) = (sigma * f.preps[p]).trace().real();
  }
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> ed(emat), rd(rmat);
  if (ed.rank() < n_pauli || rd.rank() < n_pauli) {
    throw NumericalError("fiducial frame is rank deficient");
  }
  const RealMatrix e_pinv = ed.pseudoInverse(), r_pinv = rd.pseudoInverse();
  QuantumInstrument inst;
  for (int k = 0; k < 2; ++k) inst.maps[k] = {2, e_pinv * freq[k] * r_pinv};
  return inst;
}

Matrix clip_choi(const Matrix& choi) {
  const Matrix h = (choi + choi.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const core::RealVector ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cast<core::cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

QuantumInstrument project_cp(const QuantumInstrument& inst) {
  const int n = inst.n_qubits();
  const int d = 1 << n;
  std::array<Matrix, 2> chois;
  Matrix s = Matrix::Zero(d, d);
  for (int k = 0; k < 2; ++k) {
    chois[k] = clip_choi(core::choi_of_ptm(inst.maps[k]));
    // Tr_out J, an operator on the input factor.
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) s(a, b) += chois[k].block(a * d, b * d, d, d).trace();
    }
  }
  s = (s + s.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  if (es.eigenvalues().minCoeff() < 1e-12) {
    throw NumericalError("CP projection: summed map annihilates an input state");
  }
  const core::RealVector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix s_inv_half =
      es.eigenvectors() * inv_sqrt.cast<core::cplx>().asDiagonal() * es.eigenvectors().adjoint();
  const Matrix lift = core::kron(s_inv_half, Matrix::Identity(d, d));
  QuantumInstrument out;
  for (int k = 0; k < 2; ++k) {
    out.maps[k] = core::ptm_of_choi(lift * chois[k] * lift, n);
  }
  return out;
}

QuantumInstrument reconstruct_instrument(const CountTable& counts, const FiducialSet& f) {
  return project_cp(linear_inversion(counts, f));
}

void write_counts_csv(const std::filesystem::path& path, const CountTable& counts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "prep_fiducial,meas_fiducial,outcome,count\n";
  for (const CountRow& r : counts) {
    out << r.prep_fiducial << ',' << r.meas_fiducial << ',' << r.outcome << ','
        << format_number(r.count) << '\n';
  }
}

CountTable read_counts_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open counts file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("counts file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "prep_fiducial,meas_fiducial,outcome,count") {
    throw ConfigError("counts file header must be prep_fiducial,meas_fiducial,outcome,count");
  }
  CountTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 4) throw ConfigError("counts row must have 4 columns: '" + line + "'");
    table.push_back({cols[0], cols[1], static_cast<int>(parse_double(cols[2], "outcome")),
                     parse_double(cols[3], "count")});
  }
  return table;
}

std::string instrument_csv(const QuantumInstrument& inst) {
  const int n = inst.n_qubits();
  const int dim = inst.maps[0].dim();
  std::ostringstream os;
  os << "outcome,row";
  for (int j = 0; j < dim; ++j) os << ',' << core::pauli_label(j, n);
  os << '\n';
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < dim; ++i) {
      os << k << ',' << core::pauli_label(i, n);
      for (int j = 0; j < dim; ++j) os << ',' << format_number(inst.maps[k].matrix(i, j));
      os << '\n';
    }
  }
  return os.str();
}

QuantumInstrument parse_instrument_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("instrument file is empty");
  const auto header = split(line, ',');
  const int dim = static_cast<int>(header.size()) - 2;
  int n = 0;
  while ((1 << (2 * n)) < dim) ++n;
  if (dim < 4 || (1 << (2 * n)) != dim || header[0] != "outcome" || header[1] != "row") {
    throw ConfigError("instrument header must be outcome,row,<Pauli labels>");
  }
  for (int j = 0; j < dim; ++j) {
    if (header[j + 2] != core::pauli_label(j, n)) {
      throw ConfigError("instrument columns are not in Pauli basis order");
    }
  }
  QuantumInstrument inst;
  for (auto& m : inst.maps) m = {n, RealMatrix::Zero(dim, dim)};
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (static_cast<int>(cols.size()) != dim + 2) throw ConfigError("malformed instrument row");
    const int k = static_cast<int>(parse_double(cols[0], "outcome"));
    if (k != 0 && k != 1) throw ConfigError("instrument outcome must be 0 or 1");
    const int i = core::pauli_index(cols[1]);
    for (int j = 0; j < dim; ++j) inst.maps[k].matrix(i, j) = parse_double(cols[j + 2], "entry");
    ++rows;
  }
  if (rows != 2 * dim) throw ConfigError("instrument file is missing rows");
  return inst;
}

}  // namespace mcmlab::tomo

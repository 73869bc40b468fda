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

#include "mcmlab/mcm/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcmlab/core/channel.hpp"
#include "mcmlab/core/errors.hpp"
#include "mcmlab/core/pauli.hpp"
#include "mcmlab/mcm/gates.hpp"

namespace mcmlab::mcm {

using core::DensityState;
using core::Matrix;
using device::DeviceConfig;
using device::EnvelopeMode;
using device::VoltageLevel;
namespace gates = core::gates;

namespace {

bool contains(const std::vector<Qubit>& qubits, Qubit q) {
  return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

Matrix parity_projector(Parity p) {
  Matrix m = Matrix::Zero(4, 4);
  if (p == Parity::Even) {
    m(0, 0) = 1.0;
    m(3, 3) = 1.0;
  } else {
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
  }
  return m;
}

Parity other(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }

class Propagator {
 public:
  Propagator(Matrix op, const std::vector<Qubit>& qubits) : op_(std::move(op)), qubits_(qubits) {}

  void unitary(const Matrix& u, const std::vector<Qubit>& targets) {
    op_ = core::conjugate_local(op_, u, targets, qubits_);
  }
  void project(const Matrix& p, const std::vector<Qubit>& targets) {
    op_ = core::conjugate_local(op_, p, targets, qubits_);
  }
  void dephase(double contrast, Qubit q) { op_ = core::dephase_local(op_, contrast, q, qubits_); }
  void channel(const core::QuantumChannel& ch, Qubit q) {
    op_ = core::apply_channel(op_, ch, {q}, qubits_);
  }
  Matrix take() { return std::move(op_); }

 private:
  Matrix op_;
  const std::vector<Qubit>& qubits_;
};

double feedforward_phase(const McmSpec& spec, Parity acted) {
  if (const auto* f = std::get_if<FpgaPhase>(&spec.policy)) {
    return acted == Parity::Odd ? f->phi_m1 : f->phi_m0;
  }
  if (const auto* c = std::get_if<InLayerCds>(&spec.policy)) return c->phi_r;
  return 0.0;
}

// One true-parity branch of the MCM; `acted` is the label the controller used.
Matrix propagate_branch(const Matrix& op, const std::vector<Qubit>& qubits, const McmSpec& spec,
                        const DeviceConfig& cfg, const NoiseModel& noise, Parity truth,
                        Parity acted) {
  Propagator prop(op, qubits);
  if (spec.entangle) {
    const device::GateErrorParams* err = noise.gate_errors ? &cfg.gate_error : nullptr;
    for (const GateOp& g : build_cnot(spec.basis, spec.data_qubit, Qubit::A1, err).ops) {
      prop.unitary(g.u, g.targets);
    }
    if (err && err->sq_depol > 0.0) {
      const core::QuantumChannel depol = core::depolarizing(err->sq_depol);
      prop.channel(depol, spec.data_qubit);
      prop.channel(depol, Qubit::A1);
    }
  }
  std::vector<Qubit> data;
  for (Qubit q : qubits) {
    if (core::is_data(q)) data.push_back(q);
  }
  bool projected = false, refocused = false;
  for (const Segment& seg : window_segments(spec.mode, spec.t_m)) {
    if (!seg.before_refocus && !refocused) {
      for (Qubit q : data) {
        if (spec.is_decoupled(q)) prop.unitary(gates::x(), {q});
      }
      refocused = true;
    }
    if (seg.level == VoltageLevel::ReadAncilla && !projected) {
      prop.project(parity_projector(truth), {Qubit::A2, Qubit::A1});
      projected = true;
    }
    for (Qubit q : data) {
      double theta = device::stark_phase(q, seg.level, seg.duration, Parity::Even, cfg);
      if (seg.level == VoltageLevel::ReadAncilla && truth == Parity::Odd) {
        theta += device::charge_phase(q, seg.duration, cfg);
      }
      // A positive shift advances the phase in the echo frame (see PhaseLedger).
      prop.unitary(gates::rz(-theta), {q});
    }
  }
  for (Qubit q : data) {
    if (!spec.is_decoupled(q)) continue;
    const double g = device::stark_phase(q, VoltageLevel::Ctrl, spec.t_m, Parity::Even, cfg);
    prop.unitary(gates::rz(-g), {q});
  }
  if (noise.decoherence) {
    for (Qubit q : data) {
      const EnvelopeMode mode = spec.is_decoupled(q) ? EnvelopeMode::Hahn : EnvelopeMode::Ramsey;
      prop.dephase(device::dephasing_envelope(q, spec.total_time(), mode, cfg), q);
    }
  }
  if (contains(qubits, spec.data_qubit)) {
    const double phi = feedforward_phase(spec, acted);
    if (phi != 0.0) {
      prop.unitary(gates::rz(spec.is_decoupled(spec.data_qubit) ? -phi : phi),
                   {spec.data_qubit});
    }
  }
  return prop.take();
}

bool label_can_flip(const McmSpec& spec, const NoiseModel& noise) {
  return spec.sensor_on && noise.classification == Classification::SensorLimited;
}

void check_register(const std::vector<Qubit>& qubits, const McmSpec& spec) {
  if (!contains(qubits, Qubit::A1) || !contains(qubits, Qubit::A2)) {
    throw PreconditionError("MCM register must contain A1 and A2");
  }
  if (std::none_of(qubits.begin(), qubits.end(), core::is_data)) {
    throw PreconditionError("MCM register must contain a data qubit");
  }
  if (spec.entangle && !contains(qubits, spec.data_qubit)) {
    throw PreconditionError("measured data qubit is not in the register");
  }
}

std::vector<Qubit> data_of(const std::vector<Qubit>& qubits) {
  std::vector<Qubit> data;
  for (Qubit q : qubits) {
    if (core::is_data(q)) data.push_back(q);
  }
  return data;
}

}  // namespace

std::array<double, 2> parity_probabilities(const DensityState& state,
                                           std::pair<Qubit, Qubit> pair) {
  const std::vector<Qubit> targets{pair.first, pair.second};
  const double p_even = core::expectation(state, parity_projector(Parity::Even), targets);
  return {std::clamp(p_even, 0.0, 1.0), std::clamp(1.0 - p_even, 0.0, 1.0)};
}

ParityResult psb_parity_measure(const DensityState& state, std::pair<Qubit, Qubit> pair,
                                core::ShotStream& rng) {
  auto is_pair = [&](Qubit a, Qubit b) {
    return (pair.first == a && pair.second == b) || (pair.first == b && pair.second == a);
  };
  device::ParityPair kind;
  if (is_pair(Qubit::A1, Qubit::A2)) {
    kind = device::ParityPair::Ancilla;
  } else if (is_pair(Qubit::D1, Qubit::D2)) {
    kind = device::ParityPair::Data;
  } else {
    throw PreconditionError("PSB readout pairs are (A1, A2) and (D1, D2)");
  }
  const auto probs = parity_probabilities(state, pair);
  const Parity outcome = rng.uniform() < probs[1] ? Parity::Odd : Parity::Even;
  const double p = probs[static_cast<int>(outcome)];
  if (p < 1e-15) throw NumericalError("sampled a zero-probability parity branch");
  const Matrix proj = core::embed(parity_projector(outcome), {pair.first, pair.second},
                                  state.qubits());
  DensityState post(state.qubits(), proj * state.matrix() * proj / p);
  return {outcome, p, std::move(post), device::charge_config_after(outcome, kind)};
}

int infer_single_qubit(int outcome_zz, int reference_bit) {
  if ((outcome_zz != 0 && outcome_zz != 1) || (reference_bit != 0 && reference_bit != 1)) {
    throw PreconditionError("outcomes are 0 or 1");
  }
  return outcome_zz ^ reference_bit;
}

PhaseLedger phase_ledger(const McmSpec& spec, const DeviceConfig& cfg) {
  spec.validate();
  PhaseLedger ledger;
  for (Qubit q : {Qubit::D1, Qubit::D2}) {
    const bool decoupled = spec.is_decoupled(q);
    double theta_r = 0.0, theta_c = 0.0;
    for (const Segment& seg : window_segments(spec.mode, spec.t_m)) {
      const double sign = (decoupled && !seg.before_refocus) ? 1.0 : -1.0;
      theta_r += sign * device::stark_phase(q, seg.level, seg.duration, Parity::Even, cfg);
      if (seg.level == VoltageLevel::ReadAncilla) {
        theta_c += sign * device::charge_phase(q, seg.duration, cfg);
      }
    }
    if (decoupled) theta_r += device::stark_phase(q, VoltageLevel::Ctrl, spec.t_m, Parity::Even, cfg);
    double phi0 = 0.0, phi1 = 0.0;
    if (q == spec.data_qubit) {
      phi0 = feedforward_phase(spec, Parity::Even);
      phi1 = feedforward_phase(spec, Parity::Odd);
    }
    QubitPhases p;
    p.theta_r = core::wrap_phase(theta_r);
    p.theta_c = core::wrap_phase(theta_c);
    p.theta_m0 = core::wrap_phase(theta_r);
    p.theta_m1 = core::wrap_phase(theta_r + theta_c);
    p.phi_m0 = core::wrap_phase(phi0);
    p.phi_m1 = core::wrap_phase(phi1);
    p.theta_t0 = core::wrap_phase(theta_r + phi0);
    p.theta_t1 = core::wrap_phase(theta_r + theta_c + phi1);
    ledger.qubits[q] = p;
  }
  return ledger;
}

Matrix propagate_mcm(const Matrix& op, const std::vector<Qubit>& qubits, const McmSpec& spec,
                     const DeviceConfig& cfg, const NoiseModel& noise, Parity label) {
  if (!label_can_flip(spec, noise)) {
    return propagate_branch(op, qubits, spec, cfg, noise, label, label);
  }
  const double eps = device::readout_error_prob(spec.t_m, cfg);
  return (1.0 - eps) * propagate_branch(op, qubits, spec, cfg, noise, label, label) +
         eps * propagate_branch(op, qubits, spec, cfg, noise, other(label), label);
}

McmShotSampler::McmShotSampler(const DensityState& state, const McmSpec& spec,
                               const DeviceConfig& cfg, const NoiseModel& noise)
    : spec_(spec), cfg_(&cfg), noise_(noise) {
  spec.validate();
  const std::vector<Qubit>& qubits = state.qubits();
  check_register(qubits, spec);
  if (core::expectation(state, gates::projector(1), {Qubit::A2}) < 1.0 - 1e-9) {
    throw PreconditionError("A2 must be prepared in |1>");
  }
  std::array<Matrix, 2> diag;
  for (Parity truth : {Parity::Even, Parity::Odd}) {
    const int k = static_cast<int>(truth);
    diag[k] = propagate_branch(state.matrix(), qubits, spec, cfg, noise, truth, truth);
    prob_[k] = std::max(0.0, diag[k].trace().real());
  }
  const bool can_act_wrong =
      spec.uses_fpga() && spec.sensor_on && noise.classification == Classification::SensorLimited;
  const std::vector<Qubit> data = data_of(qubits);
  for (Parity truth : {Parity::Even, Parity::Odd}) {
    const int k = static_cast<int>(truth);
    if (prob_[k] < 1e-15) continue;
    for (Parity acted : {Parity::Even, Parity::Odd}) {
      if (acted != truth && !can_act_wrong) continue;
      const Matrix post = acted == truth ? diag[k]
                                         : propagate_branch(state.matrix(), qubits, spec, cfg,
                                                            noise, truth, acted);
      DensityState full(qubits, post / prob_[k]);
      DensityState reduced = core::partial_trace(full, data);
      branch_[k][static_cast<int>(acted)] = Branch{std::move(full), std::move(reduced)};
    }
  }
  budget_ = spec.total_time();
  if (spec.uses_fpga()) budget_ += cfg.feedforward_latency;
}

ShotRecord McmShotSampler::sample(core::ShotStream& rng) const {
  const Parity truth =
      rng.uniform() * (prob_[0] + prob_[1]) < prob_[1] ? Parity::Odd : Parity::Even;
  const double p = prob_[static_cast<int>(truth)];
  if (p < 1e-15) throw NumericalError("sampled a zero-probability MCM branch");

  const double signal =
      device::sample_sensor_signal(truth, spec_.t_m, spec_.sensor_on, *cfg_, rng);
  std::optional<Parity> classified;
  if (spec_.sensor_on) classified = device::classify_sensor_signal(signal, *cfg_);
  Parity acted = truth;
  if (spec_.uses_fpga() && classified && noise_.classification == Classification::SensorLimited) {
    acted = *classified;
  }
  const Branch& b = *branch_[static_cast<int>(truth)][static_cast<int>(acted)];
  return {truth, signal, classified, p, b.post, b.data, budget_};
}

ShotRecord execute_mcm(const DensityState& state, const McmSpec& spec, const DeviceConfig& cfg,
                       core::ShotStream& rng, const NoiseModel& noise) {
  return McmShotSampler(state, spec, cfg, noise).sample(rng);
}

ExactMcm execute_mcm_exact(const DensityState& state, const McmSpec& spec,
                           const DeviceConfig& cfg, const NoiseModel& noise) {
  spec.validate();
  const std::vector<Qubit>& qubits = state.qubits();
  check_register(qubits, spec);
  if (core::expectation(state, gates::projector(1), {Qubit::A2}) < 1.0 - 1e-9) {
    throw PreconditionError("A2 must be prepared in |1>");
  }
  std::array<Matrix, 2> out;
  ExactMcm result{{}, {}, state};
  for (Parity label : {Parity::Even, Parity::Odd}) {
    const int k = static_cast<int>(label);
    out[k] = propagate_mcm(state.matrix(), qubits, spec, cfg, noise, label);
    result.probability[k] = std::max(0.0, out[k].trace().real());
    if (result.probability[k] > 1e-15) {
      result.post_states[k] = DensityState(qubits, out[k] / result.probability[k]);
    }
  }
  const double total = result.probability[0] + result.probability[1];
  result.average = DensityState(qubits, (out[0] + out[1]) / total);
  return result;
}

core::QuantumInstrument instrument_of_spec(const McmSpec& spec, const DeviceConfig& cfg,
                                           const NoiseModel& noise) {
  spec.validate();
  const Qubit d = spec.data_qubit;
  const std::vector<Qubit> reg{Qubit::A2, Qubit::A1, d};
  const std::vector<Qubit> pair{d, Qubit::A1};
  const Matrix a2 = gates::projector(1);
  core::QuantumInstrument inst;
  for (Parity label : {Parity::Even, Parity::Odd}) {
    auto map = [&](const Matrix& x) {
      const Matrix lifted = core::kron(a2, core::reorder(x, pair, {Qubit::A1, d}));
      const Matrix out = propagate_mcm(lifted, reg, spec, cfg, noise, label);
      return core::partial_trace(out, reg, pair);
    };
    inst.maps[static_cast<int>(label)] = core::ptm_of_superoperator(map, 2);
  }
  return inst;
}

DensityState frame_z(const DensityState& state, Qubit q, double phi, bool flipped) {
  return core::apply_unitary(state, gates::rz(flipped ? -phi : phi), {q});
}

double ramsey_p0(const DensityState& state, Qubit q, double phi, bool flipped) {
  Matrix r = core::partial_trace(state.matrix(), state.qubits(), {q});
  if (flipped) r = gates::x() * r * gates::x();
  const Matrix u = gates::sqrt_x() * gates::rz(phi);
  return (u * r * u.adjoint())(0, 0).real();
}

double exchange_conditional_phase(double v_j3, double total_time, Parity ancilla_parity,
                                  const DeviceConfig& cfg) {
  if (!(total_time >= 0.0)) throw PreconditionError("total_time must be non-negative");
  const device::ChargeConfig charge =
      device::charge_config_after(ancilla_parity, device::ParityPair::Ancilla);
  return 2.0 * core::kPi * device::exchange_rate(v_j3, charge, cfg) * total_time;
}

DensityState exchange_cds_dcz(const DensityState& state, double v_j3, double total_time,
                              Parity ancilla_parity, const DeviceConfig& cfg) {
  if (!state.contains(Qubit::D1) || !state.contains(Qubit::D2)) {
    throw PreconditionError("exchange CDS needs D1 and D2 in the register");
  }
  const double phi = exchange_conditional_phase(v_j3, total_time, ancilla_parity, cfg);
  const Matrix u =
      decoupled_exchange(phi, 0.0, Qubit::D1, Qubit::D2).unitary({Qubit::D1, Qubit::D2});
  return core::apply_unitary(state, u, {Qubit::D1, Qubit::D2});
}

}  // namespace mcmlab::mcm

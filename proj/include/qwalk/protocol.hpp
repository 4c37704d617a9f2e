// protocol.hpp
//
// End-to-end BRSP drivers. A protocol run is: walk -> joint position
// measurement -> Alice's coin (A2) -> Bob's coin (B2) -> Charlie's coins
// (controlled only) -> Pauli correction on A3/B3. The verified end state is
// the swapped-target product: Bob's amplitudes on Alice's coin A3 and
// Alice's amplitudes on Bob's coin B3. All measurements commute (disjoint
// registers); the order is fixed anyway so probability decompositions are
// reproducible.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/hilbert.hpp"
#include "qwalk/measurement.hpp"
#include "qwalk/operators.hpp"
#include "qwalk/walks.hpp"

namespace qwalk {

struct ProtocolConfig {
  Protocol protocol;
  Topology topology;
  std::array<double, 2> alice_target;  // (a0, a1), real, normalized
  std::array<double, 2> bob_target;    // (b0, b1), real, normalized

  void validate() const {
    for (const auto& t : {alice_target, bob_target})
      if (std::abs(t[0] * t[0] + t[1] * t[1] - 1.0) > kAmplitudeTol)
        throw Error("protocol targets must be normalized real pairs");
  }
};

// One complete measurement record: position vector label, the two coin
// basis labels, and Charlie's outcome when a controller is present.
struct OutcomeTuple {
  std::string position;
  std::string alice_coin;  // b0 | b1
  std::string bob_coin;    // g0 | g1
  std::optional<std::string> charlie;

  bool operator==(const OutcomeTuple&) const = default;

  std::string display() const {
    std::string s = position + " " + alice_coin + " " + bob_coin;
    if (charlie) s += " " + *charlie;
    return s;
  }
};

namespace detail {

// Orders labels by (alphabetic prefix, numeric suffix) so a2 < a10 and the
// Charlie labels 00..11 sort numerically.
inline bool label_less(const std::string& lhs, const std::string& rhs) {
  auto split = [](const std::string& s) {
    std::size_t cut = s.size();
    while (cut > 0 && s[cut - 1] >= '0' && s[cut - 1] <= '9') --cut;
    const std::string prefix = s.substr(0, cut);
    const long number = cut == s.size() ? -1 : std::stol(s.substr(cut));
    return std::pair<std::string, long>{prefix, number};
  };
  return split(lhs) < split(rhs);
}

}  // namespace detail

struct OutcomeOrder {
  bool operator()(const OutcomeTuple& lhs, const OutcomeTuple& rhs) const {
    if (lhs.position != rhs.position) return detail::label_less(lhs.position, rhs.position);
    if (lhs.alice_coin != rhs.alice_coin) return lhs.alice_coin < rhs.alice_coin;
    if (lhs.bob_coin != rhs.bob_coin) return lhs.bob_coin < rhs.bob_coin;
    return lhs.charlie.value_or("") < rhs.charlie.value_or("");
  }
};

// Ordered Pauli letters for each of the two corrected coins, applied
// leftmost first. Empty sequence = identity.
struct CorrectionPair {
  std::vector<PauliAxis> a3;
  std::vector<PauliAxis> b3;

  bool operator==(const CorrectionPair&) const = default;
};

inline std::string pauli_string(const std::vector<PauliAxis>& seq) {
  if (seq.empty()) return "I";
  std::string s;
  for (PauliAxis axis : seq) s += axis == PauliAxis::X ? 'X' : 'Z';
  return s;
}

inline std::vector<PauliAxis> parse_pauli_string(std::string_view text) {
  if (text == "I") return {};
  std::vector<PauliAxis> seq;
  for (char c : text) {
    if (c == 'X')
      seq.push_back(PauliAxis::X);
    else if (c == 'Z')
      seq.push_back(PauliAxis::Z);
    else
      throw Error("Pauli strings use letters I, X, Z: got '" + std::string(text) + "'");
  }
  return seq;
}

// Pauli class of a sequence mod phase: (x parity, z parity). The sixteen
// class pairs {I, X, Z, XZ} x {I, X, Z, XZ} are exactly the candidate
// corrections the oracle searches.
struct PauliClass {
  bool x = false;
  bool z = false;

  auto operator<=>(const PauliClass&) const = default;
};

inline PauliClass pauli_class(const std::vector<PauliAxis>& seq) {
  PauliClass c;
  for (PauliAxis axis : seq)
    (axis == PauliAxis::X ? c.x : c.z) ^= true;
  return c;
}

// Canonical representative per class: shortest product, ties broken by
// I < X < Z < XZ.
inline std::vector<PauliAxis> canonical_sequence(PauliClass c) {
  std::vector<PauliAxis> seq;
  if (c.x) seq.push_back(PauliAxis::X);
  if (c.z) seq.push_back(PauliAxis::Z);
  return seq;
}

inline CorrectionPair canonical_correction(const CorrectionPair& pair) {
  return {canonical_sequence(pauli_class(pair.a3)), canonical_sequence(pauli_class(pair.b3))};
}

inline StateVector apply_correction(const StateVector& state, const CorrectionPair& pair) {
  std::vector<PauliOp> sequence;
  for (PauliAxis axis : pair.a3) sequence.push_back({axis, RegisterId::A3});
  for (PauliAxis axis : pair.b3) sequence.push_back({axis, RegisterId::B3});
  return apply_pauli_sequence(state, sequence);
}

struct VerificationResult {
  OutcomeTuple outcome;
  double joint_probability = 0.0;
  double fidelity_after_correction = 0.0;
  CorrectionPair correction_used;
  std::array<double, 2> alice_target{};
  std::array<double, 2> bob_target{};

  bool passed() const { return fidelity_after_correction >= kFidelityPass; }
};

// Deterministic target generator: theta uniform in [0, 2pi), target
// (cos theta, sin theta). Angles within 1e-6 of an axis are resampled so a
// coin outcome never drops below the impossible-outcome threshold.
class TargetGenerator {
public:
  explicit TargetGenerator(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::array<double, 2> next() {
    while (true) {
      const double theta = 2.0 * kPi * uniform();
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      if (std::min(std::abs(c), std::abs(s)) > 1e-6) return {c, s};
    }
  }

private:
  static constexpr double kPi = 3.141592653589793238462643383279502884;

  // splitmix64; keeps machine reports byte-identical across platforms.
  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t state_;
};

// Caches the walk and the target-independent position basis for one
// (protocol, topology); the coin bases depend on the targets and are built
// per cascade.
class ProtocolEngine {
public:
  ProtocolEngine(Protocol protocol, Topology topology)
      : protocol_(protocol),
        topology_(topology),
        program_(build_walk_program(protocol, topology)),
        position_basis_(build_position_basis(protocol, topology)),
        controller_basis_(build_controller_basis()),
        final_state_(run_walk(program_, program_.steps.size())) {}

  Protocol protocol() const { return protocol_; }
  Topology topology() const { return topology_; }
  const WalkProgram& program() const { return program_; }
  const RegisterLayout& layout() const { return program_.layout; }
  const MeasurementBasis& position_basis() const { return position_basis_; }
  const StateVector& final_state() const { return final_state_; }

  struct Cascade {
    double joint_probability = 0.0;
    StateVector post_state;  // measured registers collapsed, before correction
  };

  Cascade measure_cascade(const OutcomeTuple& outcome, std::array<double, 2> alice,
                          std::array<double, 2> bob) const {
    check_outcome_shape(outcome);
    OutcomeRecord r = measure_project(final_state_, position_basis_, outcome.position);
    double probability = r.probability;

    r = measure_project(r.post_state, build_coin_basis(RegisterId::A2, alice),
                        outcome.alice_coin);
    probability *= r.probability;
    r = measure_project(r.post_state, build_coin_basis(RegisterId::B2, bob),
                        outcome.bob_coin);
    probability *= r.probability;

    if (outcome.charlie) {
      r = measure_project(r.post_state, controller_basis_, *outcome.charlie);
      probability *= r.probability;
    }
    return {probability, std::move(r.post_state)};
  }

  // Full-layout product state the corrected cascade must match: the chosen
  // measurement vectors on the measured registers, Bob's target on A3 and
  // Alice's target on B3.
  StateVector target_state(const OutcomeTuple& outcome, std::array<double, 2> alice,
                           std::array<double, 2> bob) const {
    check_outcome_shape(outcome);
    std::vector<RegisterBlock> blocks{
        position_basis_.block(outcome.position),
        build_coin_basis(RegisterId::A2, alice).block(outcome.alice_coin),
        build_coin_basis(RegisterId::B2, bob).block(outcome.bob_coin),
        qubit_block(RegisterId::A3, Complex{bob[0], 0.0}, Complex{bob[1], 0.0}),
        qubit_block(RegisterId::B3, Complex{alice[0], 0.0}, Complex{alice[1], 0.0})};
    if (outcome.charlie) blocks.push_back(controller_basis_.block(*outcome.charlie));
    return product_state(layout(), blocks);
  }

  double corrected_fidelity(const OutcomeTuple& outcome, const CorrectionPair& correction,
                            std::array<double, 2> alice, std::array<double, 2> bob) const {
    const Cascade cascade = measure_cascade(outcome, alice, bob);
    const StateVector corrected = apply_correction(cascade.post_state, correction);
    return fidelity_up_to_phase(corrected, target_state(outcome, alice, bob));
  }

  // Fidelity of the (A3,B3) state with the swapped target when Charlie's
  // outcome is traced out instead of conditioned on: the mean of the pure
  // fidelities over Charlie's computational outcomes weighted by their
  // probabilities. Controlled protocols only; < 1 for generic targets.
  double unconditioned_controller_fidelity(const OutcomeTuple& outcome,
                                           std::array<double, 2> alice,
                                           std::array<double, 2> bob) const {
    if (protocol_ != Protocol::Controlled)
      throw Error("controller gating applies to controlled protocols only");
    OutcomeTuple partial = outcome;
    partial.charlie.reset();
    OutcomeRecord r = measure_project(final_state_, position_basis_, partial.position);
    r = measure_project(r.post_state, build_coin_basis(RegisterId::A2, alice),
                        partial.alice_coin);
    r = measure_project(r.post_state, build_coin_basis(RegisterId::B2, bob),
                        partial.bob_coin);

    double fidelity = 0.0;
    for (const BasisVector& charlie : controller_basis_.vectors) {
      OutcomeTuple full = partial;
      full.charlie = charlie.label;
      const StateVector target = target_state(full, alice, bob);
      fidelity += std::norm(inner_product(target, r.post_state));
    }
    return fidelity;
  }

private:
  void check_outcome_shape(const OutcomeTuple& outcome) const {
    if ((protocol_ == Protocol::Controlled) != outcome.charlie.has_value())
      throw Error("outcome tuple does not match the protocol's controller mode");
  }

  Protocol protocol_;
  Topology topology_;
  WalkProgram program_;
  MeasurementBasis position_basis_;
  MeasurementBasis controller_basis_;
  StateVector final_state_;
};

// Every outcome tuple of a configuration, in canonical order.
inline std::vector<OutcomeTuple> enumerate_outcomes(Protocol protocol, Topology topology) {
  const MeasurementBasis positions = build_position_basis(protocol, topology);
  std::vector<OutcomeTuple> out;
  for (const BasisVector& p : positions.vectors) {
    for (const char* alice : {"b0", "b1"}) {
      for (const char* bob : {"g0", "g1"}) {
        if (protocol == Protocol::Controlled) {
          for (const char* charlie : {"00", "01", "10", "11"})
            out.push_back({p.label, alice, bob, std::string(charlie)});
        } else {
          out.push_back({p.label, alice, bob, std::nullopt});
        }
      }
    }
  }
  return out;
}

inline VerificationResult run_protocol_outcome(const ProtocolConfig& config,
                                               const OutcomeTuple& outcome,
                                               const CorrectionPair& correction) {
  config.validate();
  const ProtocolEngine engine(config.protocol, config.topology);
  const auto cascade = engine.measure_cascade(outcome, config.alice_target, config.bob_target);
  const StateVector corrected = apply_correction(cascade.post_state, correction);
  const double fidelity = fidelity_up_to_phase(
      corrected, engine.target_state(outcome, config.alice_target, config.bob_target));
  return {outcome, cascade.joint_probability, fidelity, correction, config.alice_target,
          config.bob_target};
}

// Joint probability of the full cascade. Walks never involve the targets,
// so the value is target-independent; this is asserted by re-evaluating at
// three generated target pairs.
inline double success_probability(const ProtocolConfig& config, const OutcomeTuple& outcome) {
  config.validate();
  const ProtocolEngine engine(config.protocol, config.topology);
  const double p =
      engine.measure_cascade(outcome, config.alice_target, config.bob_target).joint_probability;
  TargetGenerator gen(0x5eedu);
  for (int i = 0; i < 3; ++i) {
    const auto a = gen.next();
    const auto b = gen.next();
    const double q = engine.measure_cascade(outcome, a, b).joint_probability;
    if (std::abs(q - p) > kAmplitudeTol)
      throw Error("success probability unexpectedly depends on the targets");
  }
  return p;
}

}  // namespace qwalk

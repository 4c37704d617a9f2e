// walks.hpp
//
// The fixed walk programs behind the BRSP protocols. Every protocol runs
// the same wiring over its topology's shift:
//
//   W1: H on A2, shift A1 by A2        W4: H on B3, shift A1 by B3
//   W2: H on B2, shift B1 by B2        W5: H on C1, shift A1 by C1
//   W3: H on A3, shift B1 by A3        W6: H on C2, shift B1 by C2
//
// Uncontrolled protocols stop after W4; controlled ones add Charlie's
// W5/W6. Line windows are sized so no shift can leave them: each position
// register takes 2 shifts uncontrolled (L = 2) and 3 controlled (L = 3).

#pragma once

#include <string>
#include <vector>

#include "qwalk/hilbert.hpp"
#include "qwalk/operators.hpp"

namespace qwalk {

enum class Protocol { Uncontrolled, Controlled };
enum class Topology { Line, TwoVertex, Cycle4 };

inline std::string_view to_string(Protocol protocol) {
  return protocol == Protocol::Uncontrolled ? "uncontrolled" : "controlled";
}

inline std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::Line: return "line";
    case Topology::TwoVertex: return "k2";
    case Topology::Cycle4: return "c4";
  }
  return "?";
}

struct WalkStep {
  RegisterId hadamard_coin;
  ConditionalShiftSpec shift;

  bool operator==(const WalkStep&) const = default;
};

struct WalkProgram {
  Protocol protocol;
  Topology topology;
  RegisterLayout layout;
  std::vector<WalkStep> steps;
};

inline RegisterLayout make_layout(Protocol protocol, Topology topology) {
  const bool controlled = protocol == Protocol::Controlled;
  auto position = [&](RegisterId id) {
    switch (topology) {
      case Topology::Line: return line_register(id, controlled ? 3 : 2);
      case Topology::TwoVertex: return cycle_register(id, 2);
      case Topology::Cycle4: return cycle_register(id, 4);
    }
    throw LayoutError("unknown topology");
  };

  std::vector<RegisterDescriptor> regs{
      position(RegisterId::A1),      position(RegisterId::B1),
      coin_register(RegisterId::A2), coin_register(RegisterId::A3),
      coin_register(RegisterId::B2), coin_register(RegisterId::B3)};
  if (controlled) {
    regs.push_back(coin_register(RegisterId::C1));
    regs.push_back(coin_register(RegisterId::C2));
  }
  return RegisterLayout(std::move(regs));
}

inline ShiftKind shift_kind(Topology topology) {
  switch (topology) {
    case Topology::Line: return ShiftKind::Line;
    case Topology::TwoVertex: return ShiftKind::TwoVertex;
    case Topology::Cycle4: return ShiftKind::Cycle4;
  }
  throw LayoutError("unknown topology");
}

inline WalkProgram build_walk_program(Protocol protocol, Topology topology) {
  const ShiftKind kind = shift_kind(topology);
  auto step = [&](RegisterId coin, RegisterId position) {
    return WalkStep{coin, {position, coin, kind}};
  };

  WalkProgram program{protocol, topology, make_layout(protocol, topology), {}};
  program.steps = {step(RegisterId::A2, RegisterId::A1),
                   step(RegisterId::B2, RegisterId::B1),
                   step(RegisterId::A3, RegisterId::B1),
                   step(RegisterId::B3, RegisterId::A1)};
  if (protocol == Protocol::Controlled) {
    program.steps.push_back(step(RegisterId::C1, RegisterId::A1));
    program.steps.push_back(step(RegisterId::C2, RegisterId::B1));
  }
  return program;
}

// State after the first `upto` steps; upto = 0 gives the initial state.
inline StateVector run_walk(const WalkProgram& program, std::size_t upto) {
  if (upto > program.steps.size())
    throw std::out_of_range("run_walk: step count beyond program length");
  StateVector state = make_initial_state(program.layout);
  for (std::size_t i = 0; i < upto; ++i) {
    state = apply_hadamard(state, program.steps[i].hadamard_coin);
    state = apply_conditional_shift(state, program.steps[i].shift);
  }
  return state;
}

// All intermediate states, initial state included: trajectory[k] is the
// state after k steps.
inline std::vector<StateVector> walk_trajectory(const WalkProgram& program) {
  std::vector<StateVector> states;
  states.push_back(make_initial_state(program.layout));
  for (const WalkStep& step : program.steps) {
    StateVector next = apply_hadamard(states.back(), step.hadamard_coin);
    states.push_back(apply_conditional_shift(next, step.shift));
  }
  return states;
}

}  // namespace qwalk

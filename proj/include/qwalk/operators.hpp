// operators.hpp
//
// Unitary building blocks: Hadamard and Pauli gates on coin registers and
// the three conditional shift operators. Shifts are implemented as exact
// basis-term relabeling rather than matrix multiplication: O(nnz) and no
// rounding beyond the 1/sqrt(2) factors the Hadamard introduces.

#pragma once

#include <cmath>
#include <vector>

#include "qwalk/hilbert.hpp"

namespace qwalk {

enum class ShiftKind { Line, TwoVertex, Cycle4 };

inline std::string_view to_string(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::Line: return "line";
    case ShiftKind::TwoVertex: return "two-vertex";
    case ShiftKind::Cycle4: return "4-cycle";
  }
  return "?";
}

// A position shift conditioned on a coin:
//   Line:      coin 0 moves i -> i+1, coin 1 moves i -> i-1
//   TwoVertex: coin 0 stays put,      coin 1 swaps the two vertices
//   Cycle4:    coin 0 moves i -> i+1 (mod 4), coin 1 moves i -> i-1 (mod 4)
struct ConditionalShiftSpec {
  RegisterId target_position;
  RegisterId control_coin;
  ShiftKind kind;

  bool operator==(const ConditionalShiftSpec&) const = default;
};

enum class PauliAxis { X, Z };

struct PauliOp {
  PauliAxis axis;
  RegisterId target;

  bool operator==(const PauliOp&) const = default;
};

namespace detail {

inline std::size_t coin_slot(const RegisterLayout& layout, RegisterId id) {
  std::size_t slot = layout.slot_of(id);
  if (layout.registers()[slot].kind != RegisterKind::Coin)
    throw LayoutError(std::string(to_string(id)) + " is not a coin register");
  return slot;
}

inline int shifted_position(const RegisterDescriptor& reg, int value, int coin,
                            ShiftKind kind) {
  switch (kind) {
    case ShiftKind::Line: {
      if (reg.kind != RegisterKind::PositionLine)
        throw LayoutError("line shift targets a non-line register");
      int next = coin == 0 ? value + 1 : value - 1;
      if (!reg.contains(next))
        throw WindowOverflow("line shift left the position window at " +
                             std::to_string(value));
      return next;
    }
    case ShiftKind::TwoVertex:
      if (reg.kind != RegisterKind::PositionCycle || reg.extent != 2)
        throw LayoutError("two-vertex shift targets a non-K2 register");
      return coin == 0 ? value : 1 - value;
    case ShiftKind::Cycle4:
      if (reg.kind != RegisterKind::PositionCycle || reg.extent != 4)
        throw LayoutError("4-cycle shift targets a non-C4 register");
      return coin == 0 ? (value + 1) % 4 : (value + 3) % 4;
  }
  throw LayoutError("unknown shift kind");
}

}  // namespace detail

// Hadamard on a coin register: |0> -> (|0>+|1>)/sqrt(2), |1> -> (|0>-|1>)/sqrt(2).
inline StateVector apply_hadamard(const StateVector& state, RegisterId coin) {
  const std::size_t slot = detail::coin_slot(state.layout, coin);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  StateVector out{state.layout, {}};
  for (const auto& [index, amp] : state.amplitudes) {
    BasisIndex zero = index;
    BasisIndex one = index;
    zero.values[slot] = 0;
    one.values[slot] = 1;
    out.amplitudes[zero] += amp * inv_sqrt2;
    out.amplitudes[one] += (index.values[slot] == 0 ? amp : -amp) * inv_sqrt2;
  }
  out.prune();
  return out;
}

inline StateVector apply_conditional_shift(const StateVector& state,
                                           const ConditionalShiftSpec& spec) {
  const std::size_t coin = detail::coin_slot(state.layout, spec.control_coin);
  const std::size_t target = state.layout.slot_of(spec.target_position);
  const RegisterDescriptor& reg = state.layout.registers()[target];

  StateVector out{state.layout, {}};
  for (const auto& [index, amp] : state.amplitudes) {
    BasisIndex next = index;
    next.values[target] = detail::shifted_position(reg, index.values[target],
                                                   index.values[coin], spec.kind);
    out.amplitudes[next] += amp;
  }
  return out;
}

// Applies the listed Paulis in order (leftmost first). X and Z anticommute,
// so reordering changes at most a global sign.
inline StateVector apply_pauli_sequence(const StateVector& state,
                                        const std::vector<PauliOp>& sequence) {
  StateVector out = state;
  for (const PauliOp& op : sequence) {
    const std::size_t slot = detail::coin_slot(out.layout, op.target);
    std::map<BasisIndex, Complex> next;
    for (const auto& [index, amp] : out.amplitudes) {
      if (op.axis == PauliAxis::X) {
        BasisIndex flipped = index;
        flipped.values[slot] = 1 - index.values[slot];
        next[flipped] += amp;
      } else {
        next[index] += index.values[slot] == 1 ? -amp : amp;
      }
    }
    out.amplitudes = std::move(next);
  }
  return out;
}

}  // namespace qwalk

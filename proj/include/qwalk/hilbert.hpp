// hilbert.hpp
//
// Composite Hilbert-space core for the BRSP walk simulator: register
// layouts, basis indexing, sparse state vectors and the handful of
// value-level operations everything else is built from.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

using Complex = std::complex<double>;

// Tolerances used throughout. Amplitudes in these protocols are exact
// dyadics (+-2^{-k/2}), so the gaps between "equal" and "different" are
// O(1) and these margins are generous.
inline constexpr double kAmplitudeTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kImpossibleOutcomeTol = 1e-14;
inline constexpr double kFidelityPass = 1.0 - 1e-10;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Register/layout misuse: unknown ids, duplicate ids, kind mismatches.
class LayoutError : public Error {
public:
  using Error::Error;
};

// A line shift tried to leave the position window. Always indicates an
// undersized layout, never a legal protocol state.
class WindowOverflow : public Error {
public:
  using Error::Error;
};

// A measurement outcome with (numerically) zero probability was requested.
class ImpossibleOutcome : public Error {
public:
  using Error::Error;
};

// A measured state has support outside the span of the measurement basis.
class BasisSpanError : public Error {
public:
  using Error::Error;
};

enum class RegisterId : int { A1, B1, A2, A3, B2, B3, C1, C2 };

inline std::string_view to_string(RegisterId id) {
  switch (id) {
    case RegisterId::A1: return "A1";
    case RegisterId::B1: return "B1";
    case RegisterId::A2: return "A2";
    case RegisterId::A3: return "A3";
    case RegisterId::B2: return "B2";
    case RegisterId::B3: return "B3";
    case RegisterId::C1: return "C1";
    case RegisterId::C2: return "C2";
  }
  return "?";
}

enum class RegisterKind { PositionLine, PositionCycle, Coin };

// One register of the composite space.
//   PositionLine:  values in [-extent, extent] (window half-width L)
//   PositionCycle: values in [0, extent)       (extent = vertex count)
//   Coin:          values in {0, 1}
struct RegisterDescriptor {
  RegisterId id;
  RegisterKind kind;
  int extent = 0;

  int dimension() const {
    switch (kind) {
      case RegisterKind::PositionLine: return 2 * extent + 1;
      case RegisterKind::PositionCycle: return extent;
      case RegisterKind::Coin: return 2;
    }
    return 0;
  }
  int min_value() const { return kind == RegisterKind::PositionLine ? -extent : 0; }
  int max_value() const {
    switch (kind) {
      case RegisterKind::PositionLine: return extent;
      case RegisterKind::PositionCycle: return extent - 1;
      case RegisterKind::Coin: return 1;
    }
    return 0;
  }
  bool contains(int value) const { return value >= min_value() && value <= max_value(); }

  bool operator==(const RegisterDescriptor&) const = default;
};

inline RegisterDescriptor line_register(RegisterId id, int half_width) {
  if (half_width < 1) throw LayoutError("line register needs half-width >= 1");
  return {id, RegisterKind::PositionLine, half_width};
}

inline RegisterDescriptor cycle_register(RegisterId id, int vertices) {
  if (vertices != 2 && vertices != 4)
    throw LayoutError("cycle register supports 2 or 4 vertices");
  return {id, RegisterKind::PositionCycle, vertices};
}

inline RegisterDescriptor coin_register(RegisterId id) {
  return {id, RegisterKind::Coin, 2};
}

// Ordered register list; the order fixes the tensor order and the ket
// printing convention.
class RegisterLayout {
public:
  RegisterLayout() = default;

  explicit RegisterLayout(std::vector<RegisterDescriptor> registers)
      : registers_(std::move(registers)) {
    for (std::size_t i = 0; i < registers_.size(); ++i)
      for (std::size_t j = i + 1; j < registers_.size(); ++j)
        if (registers_[i].id == registers_[j].id)
          throw LayoutError("duplicate register id in layout");
  }

  const std::vector<RegisterDescriptor>& registers() const { return registers_; }
  std::size_t size() const { return registers_.size(); }

  bool has(RegisterId id) const {
    return std::any_of(registers_.begin(), registers_.end(),
                       [&](const auto& r) { return r.id == id; });
  }

  std::size_t slot_of(RegisterId id) const {
    for (std::size_t i = 0; i < registers_.size(); ++i)
      if (registers_[i].id == id) return i;
    throw LayoutError("register " + std::string(to_string(id)) + " not in layout");
  }

  const RegisterDescriptor& at(RegisterId id) const { return registers_[slot_of(id)]; }

  long total_dimension() const {
    long d = 1;
    for (const auto& r : registers_) d *= r.dimension();
    return d;
  }

  bool operator==(const RegisterLayout&) const = default;

private:
  std::vector<RegisterDescriptor> registers_;
};

// One integer value per register, in layout order. For a full layout this
// labels a computational basis ket; measurement code also uses it
// restricted to a register subset.
struct BasisIndex {
  std::vector<int> values;

  auto operator<=>(const BasisIndex&) const = default;
};

inline BasisIndex zero_index(const RegisterLayout& layout) {
  return BasisIndex{std::vector<int>(layout.size(), 0)};
}

inline void check_index(const RegisterLayout& layout, const BasisIndex& index) {
  if (index.values.size() != layout.size())
    throw LayoutError("basis index arity does not match layout");
  for (std::size_t i = 0; i < layout.size(); ++i)
    if (!layout.registers()[i].contains(index.values[i]))
      throw LayoutError("basis index value out of register range");
}

// Sparse state vector over a layout. Amplitudes are complex-valued even
// though every state these protocols produce is real. Treat instances as
// immutable once returned from an operation; operations build new states.
struct StateVector {
  RegisterLayout layout;
  std::map<BasisIndex, Complex> amplitudes;

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [index, amp] : amplitudes) s += std::norm(amp);
    return s;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  Complex amplitude(const BasisIndex& index) const {
    auto it = amplitudes.find(index);
    return it == amplitudes.end() ? Complex{0.0, 0.0} : it->second;
  }

  std::size_t term_count() const { return amplitudes.size(); }

  // Drops terms that are zero up to rounding residue. Genuine amplitudes
  // in this artifact are never below ~1e-9 (random targets excluded from
  // degenerate angles), so 1e-13 cleanly separates them from cancellation
  // leftovers.
  void prune(double eps = 1e-13) {
    for (auto it = amplitudes.begin(); it != amplitudes.end();)
      it = std::abs(it->second) < eps ? amplitudes.erase(it) : std::next(it);
  }
};

inline StateVector make_initial_state(const RegisterLayout& layout) {
  StateVector state{layout, {}};
  state.amplitudes.emplace(zero_index(layout), Complex{1.0, 0.0});
  return state;
}

// <x|y>, conjugate-linear in the first argument.
inline Complex inner_product(const StateVector& x, const StateVector& y) {
  if (x.layout != y.layout) throw LayoutError("inner_product: layout mismatch");
  const auto& a = x.amplitudes.size() <= y.amplitudes.size() ? x : y;
  Complex s{0.0, 0.0};
  for (const auto& [index, amp] : a.amplitudes) {
    if (&a == &x)
      s += std::conj(amp) * y.amplitude(index);
    else
      s += std::conj(x.amplitude(index)) * amp;
  }
  return s;
}

// |<x|y>|^2 for normalized states: 1 iff equal up to a global phase.
inline double fidelity_up_to_phase(const StateVector& x, const StateVector& y) {
  return std::norm(inner_product(x, y));
}

// Every basis index of the layout, in lexicographic (ket) order.
inline std::vector<BasisIndex> enumerate_basis(const RegisterLayout& layout) {
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(layout.total_dimension()));
  BasisIndex current = zero_index(layout);
  for (std::size_t i = 0; i < layout.size(); ++i)
    current.values[i] = layout.registers()[i].min_value();
  while (true) {
    out.push_back(current);
    std::size_t slot = layout.size();
    while (slot > 0) {
      --slot;
      if (current.values[slot] < layout.registers()[slot].max_value()) {
        ++current.values[slot];
        for (std::size_t j = slot + 1; j < layout.size(); ++j)
          current.values[j] = layout.registers()[j].min_value();
        break;
      }
      if (slot == 0) return out;
    }
  }
}

// Sparse vector over a contiguous-by-id (not necessarily contiguous in the
// layout) block of registers. Component indices are restricted to exactly
// these registers, in the listed order.
struct RegisterBlock {
  std::vector<RegisterId> registers;
  std::vector<std::pair<BasisIndex, Complex>> components;
};

inline RegisterBlock qubit_block(RegisterId id, Complex c0, Complex c1) {
  RegisterBlock block{{id}, {}};
  if (std::abs(c0) > 0.0) block.components.push_back({BasisIndex{{0}}, c0});
  if (std::abs(c1) > 0.0) block.components.push_back({BasisIndex{{1}}, c1});
  return block;
}

// Tensor product of block vectors; the blocks must cover every register of
// the layout exactly once.
inline StateVector product_state(const RegisterLayout& layout,
                                 const std::vector<RegisterBlock>& blocks) {
  std::vector<int> covered(layout.size(), 0);
  for (const auto& block : blocks)
    for (RegisterId id : block.registers) covered[layout.slot_of(id)] += 1;
  if (!std::all_of(covered.begin(), covered.end(), [](int c) { return c == 1; }))
    throw LayoutError("product_state: blocks must cover the layout exactly once");

  StateVector state{layout, {}};
  state.amplitudes.emplace(zero_index(layout), Complex{1.0, 0.0});
  for (const auto& block : blocks) {
    std::map<BasisIndex, Complex> next;
    for (const auto& [index, amp] : state.amplitudes) {
      for (const auto& [sub, coeff] : block.components) {
        if (sub.values.size() != block.registers.size())
          throw LayoutError("product_state: component arity mismatch");
        BasisIndex combined = index;
        for (std::size_t k = 0; k < block.registers.size(); ++k)
          combined.values[layout.slot_of(block.registers[k])] = sub.values[k];
        next[combined] += amp * coeff;
      }
    }
    state.amplitudes = std::move(next);
  }
  state.prune();
  for (const auto& [index, amp] : state.amplitudes) check_index(layout, index);
  return state;
}

// --- ket rendering -------------------------------------------------------
//
// Kets print as the concatenation of register values in layout order,
// negative line positions with an explicit sign: |2-20110>. All values in
// this artifact are single digits, so the rendering is reversible.

inline std::string render_ket(const RegisterLayout& layout, const BasisIndex& index) {
  std::string out;
  for (std::size_t i = 0; i < layout.size(); ++i) out += std::to_string(index.values[i]);
  return out;
}

// Inverse of render_ket. A sign attached to a zero position ("-0") parses
// as 0; parse_ket reports it through *had_negative_zero so callers can
// flag the misprint instead of silently normalizing it.
inline BasisIndex parse_ket(const RegisterLayout& layout, std::string_view text,
                            bool* had_negative_zero = nullptr) {
  BasisIndex index = zero_index(layout);
  std::size_t pos = 0;
  if (had_negative_zero) *had_negative_zero = false;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    bool negative = false;
    if (pos < text.size() && text[pos] == '-') {
      if (layout.registers()[i].kind != RegisterKind::PositionLine)
        throw LayoutError("ket sign on a non-line register: " + std::string(text));
      negative = true;
      ++pos;
    }
    if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
      throw LayoutError("malformed ket string: " + std::string(text));
    int value = text[pos] - '0';
    ++pos;
    if (negative && value == 0 && had_negative_zero) *had_negative_zero = true;
    index.values[i] = negative ? -value : value;
  }
  if (pos != text.size()) throw LayoutError("trailing characters in ket: " + std::string(text));
  check_index(layout, index);
  return index;
}

}  // namespace qwalk

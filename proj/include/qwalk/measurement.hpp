// measurement.hpp
//
// Projective measurement in arbitrary orthonormal vector sets over register
// subsets, plus constructors for every basis the protocols use. The
// position bases on the line are non-product superpositions, so projection
// is done generically on the spanned subspace rather than per register.

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qwalk/hilbert.hpp"
#include "qwalk/walks.hpp"

namespace qwalk {

struct BasisVector {
  std::string label;
  // Indices restricted to the measured registers, in basis order.
  std::vector<std::pair<BasisIndex, Complex>> components;
  std::string description;  // human-readable ket rendering

  double norm_squared() const {
    double s = 0.0;
    for (const auto& [index, coeff] : components) s += std::norm(coeff);
    return s;
  }
};

struct MeasurementBasis {
  std::vector<RegisterId> registers;
  std::vector<BasisVector> vectors;

  const BasisVector& vector(std::string_view label) const {
    for (const auto& v : vectors)
      if (v.label == label) return v;
    throw Error("unknown basis vector label: " + std::string(label));
  }

  bool has(std::string_view label) const {
    for (const auto& v : vectors)
      if (v.label == label) return true;
    return false;
  }

  RegisterBlock block(std::string_view label) const {
    const BasisVector& v = vector(label);
    return RegisterBlock{registers, v.components};
  }

  // Gram matrix must be the identity within tol.
  void validate_orthonormal(double tol = kAmplitudeTol) const {
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      for (std::size_t j = i; j < vectors.size(); ++j) {
        Complex g{0.0, 0.0};
        std::map<BasisIndex, Complex> lhs;
        for (const auto& [index, coeff] : vectors[i].components) lhs[index] = coeff;
        for (const auto& [index, coeff] : vectors[j].components) {
          auto it = lhs.find(index);
          if (it != lhs.end()) g += std::conj(it->second) * coeff;
        }
        const double expect = i == j ? 1.0 : 0.0;
        if (std::abs(g - expect) > tol)
          throw Error("basis is not orthonormal: <" + vectors[i].label + "|" +
                      vectors[j].label + ">");
      }
    }
  }
};

struct OutcomeRecord {
  std::vector<std::string> basis_labels;
  double probability = 0.0;
  StateVector post_state;
};

namespace detail {

inline std::vector<std::size_t> measured_slots(const RegisterLayout& layout,
                                               const std::vector<RegisterId>& registers) {
  std::vector<std::size_t> slots;
  slots.reserve(registers.size());
  for (RegisterId id : registers) slots.push_back(layout.slot_of(id));
  return slots;
}

inline std::vector<int> extract(const BasisIndex& index,
                                const std::vector<std::size_t>& slots) {
  std::vector<int> out;
  out.reserve(slots.size());
  for (std::size_t slot : slots) out.push_back(index.values[slot]);
  return out;
}

inline std::vector<int> extract_rest(const BasisIndex& index,
                                     const std::vector<std::size_t>& slots) {
  std::vector<int> out;
  for (std::size_t i = 0; i < index.values.size(); ++i)
    if (std::find(slots.begin(), slots.end(), i) == slots.end())
      out.push_back(index.values[i]);
  return out;
}

}  // namespace detail

// Projects onto (chosen vector) x (identity on unmeasured registers) and
// renormalizes. The measured registers stay in the layout, collapsed onto
// the chosen vector, so downstream corrections keep addressing registers
// by their original ids.
inline OutcomeRecord measure_project(const StateVector& state,
                                     const MeasurementBasis& basis,
                                     std::string_view chosen) {
  const BasisVector& vec = basis.vector(chosen);
  const auto slots = detail::measured_slots(state.layout, basis.registers);

  std::map<std::vector<int>, Complex> chosen_components;
  for (const auto& [index, coeff] : vec.components) {
    if (index.values.size() != slots.size())
      throw LayoutError("basis vector arity does not match measured registers");
    chosen_components[index.values] = coeff;
  }

  // Partial inner product <vec| psi over the measured registers, indexed by
  // the values of the remaining registers.
  std::map<std::vector<int>, Complex> rest_amplitude;
  for (const auto& [index, amp] : state.amplitudes) {
    auto it = chosen_components.find(detail::extract(index, slots));
    if (it != chosen_components.end())
      rest_amplitude[detail::extract_rest(index, slots)] += std::conj(it->second) * amp;
  }

  double probability = 0.0;
  for (const auto& [rest, amp] : rest_amplitude) probability += std::norm(amp);
  if (probability < kImpossibleOutcomeTol)
    throw ImpossibleOutcome("outcome " + std::string(chosen) + " has probability ~0");

  StateVector post{state.layout, {}};
  const double scale = 1.0 / std::sqrt(probability);
  for (const auto& [rest, amp] : rest_amplitude) {
    for (const auto& [sub, coeff] : vec.components) {
      BasisIndex full = zero_index(state.layout);
      std::size_t rest_cursor = 0;
      for (std::size_t i = 0; i < state.layout.size(); ++i) {
        auto slot_it = std::find(slots.begin(), slots.end(), i);
        full.values[i] = slot_it == slots.end()
                             ? rest[rest_cursor++]
                             : sub.values[slot_it - slots.begin()];
      }
      post.amplitudes[full] += scale * amp * coeff;
    }
  }
  post.prune();
  return OutcomeRecord{{std::string(chosen)}, probability, std::move(post)};
}

// Probability of every vector in the basis. The basis need not be complete
// on the measured registers, but it must cover the state's support.
inline std::vector<std::pair<std::string, double>> outcome_distribution(
    const StateVector& state, const MeasurementBasis& basis) {
  const auto slots = detail::measured_slots(state.layout, basis.registers);
  std::vector<std::pair<std::string, double>> out;
  double total = 0.0;
  for (const BasisVector& vec : basis.vectors) {
    std::map<std::vector<int>, Complex> comps;
    for (const auto& [index, coeff] : vec.components) comps[index.values] = coeff;
    std::map<std::vector<int>, Complex> rest_amplitude;
    for (const auto& [index, amp] : state.amplitudes) {
      auto it = comps.find(detail::extract(index, slots));
      if (it != comps.end())
        rest_amplitude[detail::extract_rest(index, slots)] += std::conj(it->second) * amp;
    }
    double p = 0.0;
    for (const auto& [rest, amp] : rest_amplitude) p += std::norm(amp);
    out.push_back({vec.label, p});
    total += p;
  }
  const double residual = state.norm_squared() - total;
  if (residual > kAmplitudeTol)
    throw BasisSpanError("state has support outside the basis span (residual " +
                         std::to_string(residual) + ")");
  return out;
}

// --- basis constructors ---------------------------------------------------

namespace detail {

inline BasisVector position_ket(const std::string& label, std::vector<int> a_and_b) {
  BasisVector v{label, {{BasisIndex{std::move(a_and_b)}, Complex{1.0, 0.0}}}, ""};
  v.description = "|" + std::to_string(v.components[0].first.values[0]) +
                  std::to_string(v.components[0].first.values[1]) + ">";
  return v;
}

// Product of (|u> + sa*|v>)/sqrt(2)-style pairs over the two position
// registers, written out as a four-ket superposition.
inline BasisVector position_pair_product(const std::string& label,
                                         std::array<int, 2> a_kets, int sign_a,
                                         std::array<int, 2> b_kets, int sign_b) {
  BasisVector v{label, {}, ""};
  std::string desc = "(";
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      const double coeff = 0.5 * (ia == 1 ? sign_a : 1) * (ib == 1 ? sign_b : 1);
      v.components.push_back({BasisIndex{{a_kets[ia], b_kets[ib]}}, Complex{coeff, 0.0}});
      desc += std::string(coeff < 0 ? "-" : (ia + ib ? "+" : "")) + "|" +
              std::to_string(a_kets[ia]) + std::to_string(b_kets[ib]) + ">";
    }
  }
  v.description = desc + ")/2";
  return v;
}

inline BasisVector position_half_pair(const std::string& label, int fixed, bool fixed_first,
                                      std::array<int, 2> kets, int sign) {
  BasisVector v{label, {}, ""};
  std::string desc = "(";
  for (int i = 0; i < 2; ++i) {
    const double coeff = (i == 1 ? sign : 1) / std::sqrt(2.0);
    std::vector<int> values = fixed_first ? std::vector<int>{fixed, kets[i]}
                                          : std::vector<int>{kets[i], fixed};
    desc += std::string(i == 1 ? (sign < 0 ? "-" : "+") : "") + "|" +
            std::to_string(values[0]) + std::to_string(values[1]) + ">";
    v.components.push_back({BasisIndex{std::move(values)}, Complex{coeff, 0.0}});
  }
  v.description = desc + ")/sqrt(2)";
  return v;
}

}  // namespace detail

// The joint position basis measured on (A1, B1). Line bases are the
// incomplete 9- and 16-vector sets that span the walk's position support;
// K2 and C4 use single computational kets.
inline MeasurementBasis build_position_basis(Protocol protocol, Topology topology) {
  MeasurementBasis basis{{RegisterId::A1, RegisterId::B1}, {}};

  if (topology == Topology::TwoVertex) {
    for (int i = 0; i < 4; ++i)
      basis.vectors.push_back(
          detail::position_ket("a" + std::to_string(i), {i / 2, i % 2}));
  } else if (topology == Topology::Cycle4) {
    // Positions land on {0,2} after two shifts per register, {1,3} after
    // three; labels carry a tilde to keep them distinct from the K2 set.
    const std::vector<std::vector<int>> kets =
        protocol == Protocol::Uncontrolled
            ? std::vector<std::vector<int>>{{2, 2}, {2, 0}, {0, 2}, {0, 0}}
            : std::vector<std::vector<int>>{{3, 3}, {3, 1}, {1, 3}, {1, 1}};
    for (int i = 0; i < 4; ++i)
      basis.vectors.push_back(detail::position_ket("at" + std::to_string(i), kets[i]));
  } else if (protocol == Protocol::Uncontrolled) {
    basis.vectors.push_back(detail::position_ket("p0", {0, 0}));
    basis.vectors.push_back(detail::position_half_pair("p1", 0, true, {2, -2}, +1));
    basis.vectors.push_back(detail::position_half_pair("p2", 0, true, {2, -2}, -1));
    basis.vectors.push_back(detail::position_half_pair("p3", 0, false, {2, -2}, +1));
    basis.vectors.push_back(detail::position_half_pair("p4", 0, false, {2, -2}, -1));
    basis.vectors.push_back(detail::position_pair_product("p5", {2, -2}, +1, {2, -2}, +1));
    basis.vectors.push_back(detail::position_pair_product("p6", {2, -2}, +1, {2, -2}, -1));
    basis.vectors.push_back(detail::position_pair_product("p7", {2, -2}, -1, {2, -2}, +1));
    basis.vectors.push_back(detail::position_pair_product("p8", {2, -2}, -1, {2, -2}, -1));
  } else {
    // 16 vectors a0..a15: four ket blocks, each with the four +/- sign
    // patterns (+,+), (+,-), (-,+), (-,-).
    const std::array<std::array<int, 2>, 2> pairs{{{3, -1}, {1, -3}}};
    int label = 0;
    for (const auto& a_kets : pairs) {
      for (const auto& b_kets : pairs) {
        for (const auto [sa, sb] :
             {std::pair{+1, +1}, std::pair{+1, -1}, std::pair{-1, +1}, std::pair{-1, -1}}) {
          basis.vectors.push_back(detail::position_pair_product(
              "a" + std::to_string(label++), a_kets, sa, b_kets, sb));
        }
      }
    }
  }

  basis.validate_orthonormal();
  return basis;
}

// Coin measurement basis on A2 or B2, parameterized by the (real) target
// amplitudes: {c0|0> + c1|1>, c1|0> - c0|1>}. A2 carries Alice's beta
// labels, B2 Bob's gamma labels.
inline MeasurementBasis build_coin_basis(RegisterId which, std::array<double, 2> amps) {
  if (which != RegisterId::A2 && which != RegisterId::B2)
    throw LayoutError("coin basis is defined on A2 or B2");
  const double residue = amps[0] * amps[0] + amps[1] * amps[1] - 1.0;
  if (std::abs(residue) > kAmplitudeTol)
    throw Error("coin basis amplitudes must be normalized");

  const char tag = which == RegisterId::A2 ? 'b' : 'g';
  MeasurementBasis basis{{which}, {}};
  BasisVector v0{std::string(1, tag) + "0",
                 {{BasisIndex{{0}}, Complex{amps[0], 0.0}},
                  {BasisIndex{{1}}, Complex{amps[1], 0.0}}},
                 ""};
  BasisVector v1{std::string(1, tag) + "1",
                 {{BasisIndex{{0}}, Complex{amps[1], 0.0}},
                  {BasisIndex{{1}}, Complex{-amps[0], 0.0}}},
                 ""};
  v0.components.erase(std::remove_if(v0.components.begin(), v0.components.end(),
                                     [](const auto& c) { return std::abs(c.second) == 0.0; }),
                      v0.components.end());
  v1.components.erase(std::remove_if(v1.components.begin(), v1.components.end(),
                                     [](const auto& c) { return std::abs(c.second) == 0.0; }),
                      v1.components.end());
  basis.vectors = {std::move(v0), std::move(v1)};
  basis.validate_orthonormal();
  return basis;
}

// Charlie's joint computational measurement on (C1, C2).
inline MeasurementBasis build_controller_basis() {
  MeasurementBasis basis{{RegisterId::C1, RegisterId::C2}, {}};
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      std::string label = std::to_string(c1) + std::to_string(c2);
      basis.vectors.push_back(
          BasisVector{label, {{BasisIndex{{c1, c2}}, Complex{1.0, 0.0}}}, "|" + label + ">"});
    }
  return basis;
}

}  // namespace qwalk

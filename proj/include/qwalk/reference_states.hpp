// reference_states.hpp
//
// Transcribed intermediate walk states and the term-by-term differ. The
// transcriptions are kept verbatim, misprints included; the simulator
// output is ground truth and any mismatch is reported with the differing
// kets instead of being corrected silently.
//
// File format (one file per configuration):
//
//   step <k>
//   <ket>
//   ...
//
// Every term of a step-k state has amplitude 2^{-k/2}, so only kets are
// listed. '# note:' lines carry transcription flags.

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/tables.hpp"

namespace qwalk {

struct ReferenceState {
  int step = 0;
  std::vector<std::string> kets;      // as printed
  std::vector<std::string> notes;     // flags attached to this step
  double amplitude() const { return std::pow(2.0, -0.5 * step); }
};

struct ReferenceStates {
  Protocol protocol{};
  Topology topology{};
  std::vector<ReferenceState> steps;
  std::vector<std::string> notes;  // file-level flags

  const ReferenceState* find_step(int step) const {
    for (const auto& s : steps)
      if (s.step == step) return &s;
    return nullptr;
  }
};

inline std::string states_filename(Protocol protocol, Topology topology) {
  return std::string(to_string(protocol)) + "_" + std::string(to_string(topology)) +
         ".states";
}

inline ReferenceStates load_reference_states(Protocol protocol, Topology topology,
                                             const std::filesystem::path& dir = default_table_dir()) {
  const std::filesystem::path path = dir / states_filename(protocol, topology);
  std::ifstream in(path);
  if (!in) throw DataFileError("cannot open states file " + path.string());

  ReferenceStates states{protocol, topology, {}, {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# note:", 0) == 0) {
      std::string note = line.substr(7);
      if (!note.empty() && note.front() == ' ') note.erase(0, 1);
      (states.steps.empty() ? states.notes : states.steps.back().notes)
          .push_back(std::move(note));
      continue;
    }
    if (line[0] == '#') continue;
    if (line.rfind("step ", 0) == 0) {
      states.steps.push_back(ReferenceState{std::stoi(line.substr(5)), {}, {}});
      continue;
    }
    if (states.steps.empty())
      throw DataFileError(path.string() + ":" + std::to_string(line_no) +
                          ": ket before any step header");
    states.steps.back().kets.push_back(line);
  }
  return states;
}

// Term-by-term comparison of a simulated state against a transcription.
struct FixtureDiff {
  std::string state_name;
  std::size_t matching_terms = 0;
  std::vector<std::string> missing_terms;     // simulated but not transcribed
  std::vector<std::string> unexpected_terms;  // transcribed but absent from simulation
  std::vector<std::string> notes;

  bool clean() const { return missing_terms.empty() && unexpected_terms.empty(); }
};

inline FixtureDiff diff_against_reference(const StateVector& simulated,
                                          const ReferenceState& reference,
                                          const std::string& state_name,
                                          double tol = kNormTol) {
  FixtureDiff diff;
  diff.state_name = state_name;
  diff.notes = reference.notes;

  std::set<BasisIndex> transcribed;
  for (const std::string& ket : reference.kets) {
    bool negative_zero = false;
    BasisIndex index = parse_ket(simulated.layout, ket, &negative_zero);
    if (negative_zero)
      diff.notes.push_back("ket " + ket + " carries a sign on a zero position; read as +" +
                           render_ket(simulated.layout, index));
    transcribed.insert(std::move(index));
  }

  const double amplitude = reference.amplitude();
  for (const auto& [index, amp] : simulated.amplitudes) {
    auto it = transcribed.find(index);
    if (it != transcribed.end() && std::abs(amp - Complex{amplitude, 0.0}) <= tol) {
      ++diff.matching_terms;
      transcribed.erase(it);
    } else {
      diff.missing_terms.push_back(render_ket(simulated.layout, index));
    }
  }
  for (const BasisIndex& index : transcribed)
    diff.unexpected_terms.push_back(render_ket(simulated.layout, index));
  return diff;
}

// Diffs of every transcribed step of a configuration against the simulator.
inline std::vector<FixtureDiff> diff_walk_against_reference(
    Protocol protocol, Topology topology,
    const std::filesystem::path& dir = default_table_dir()) {
  const ReferenceStates reference = load_reference_states(protocol, topology, dir);
  const WalkProgram program = build_walk_program(protocol, topology);
  const std::vector<StateVector> trajectory = walk_trajectory(program);

  std::vector<FixtureDiff> diffs;
  for (const ReferenceState& step : reference.steps) {
    if (step.step < 0 || static_cast<std::size_t>(step.step) >= trajectory.size())
      throw DataFileError("reference step " + std::to_string(step.step) +
                          " beyond walk length");
    diffs.push_back(diff_against_reference(trajectory[static_cast<std::size_t>(step.step)],
                                           step, "psi" + std::to_string(step.step)));
  }
  return diffs;
}

}  // namespace qwalk

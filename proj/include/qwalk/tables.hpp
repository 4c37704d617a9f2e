// tables.hpp
//
// Machine-readable correction tables, the brute-force oracle that
// re-derives them, and the differ that reconciles the two.
//
// Reference tables live in data files, one record per row:
//
//   position alice_coin bob_coin [charlie] a3_sequence b3_sequence
//
// Sequences are strings over {I, X, Z} applied leftmost first. Lines
// starting with '#' are comments; '# note:' lines carry transcription
// flags that the loader keeps with the table. The 4-cycle tables are the
// two-vertex files with the position labels relabeled a_i -> at_i.

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/protocol.hpp"

namespace qwalk {

class DataFileError : public Error {
public:
  using Error::Error;
};

struct TableKey {
  Protocol protocol;
  Topology topology;

  bool operator==(const TableKey&) const = default;
};

enum class Provenance { Reference, Derived };

struct CorrectionTable {
  TableKey key{};
  Provenance provenance = Provenance::Reference;
  std::map<OutcomeTuple, CorrectionPair, OutcomeOrder> rows;
  std::vector<std::string> notes;

  const CorrectionPair* find(const OutcomeTuple& outcome) const {
    auto it = rows.find(outcome);
    return it == rows.end() ? nullptr : &it->second;
  }
};

inline std::size_t expected_row_count(TableKey key) {
  if (key.protocol == Protocol::Uncontrolled)
    return key.topology == Topology::Line ? 36 : 16;
  return key.topology == Topology::Line ? 256 : 64;
}

inline std::string table_filename(TableKey key) {
  // C4 tables are derived from the K2 files by relabeling.
  const Topology file_topology =
      key.topology == Topology::Cycle4 ? Topology::TwoVertex : key.topology;
  return std::string(to_string(key.protocol)) + "_" +
         std::string(to_string(file_topology)) + ".table";
}

inline std::filesystem::path default_table_dir() {
  if (const char* env = std::getenv("QWALK_TABLE_DIR"); env && *env)
    return std::filesystem::path(env);
#ifdef QWALK_DEFAULT_TABLE_DIR
  return std::filesystem::path(QWALK_DEFAULT_TABLE_DIR);
#else
  return std::filesystem::path("data/reference");
#endif
}

inline CorrectionTable parse_table(std::istream& in, TableKey key,
                                   const std::string& origin = "<stream>") {
  CorrectionTable table{key, Provenance::Reference, {}, {}};
  const bool controlled = key.protocol == Protocol::Controlled;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# note:", 0) == 0) {
        std::string note = line.substr(7);
        if (!note.empty() && note.front() == ' ') note.erase(0, 1);
        table.notes.push_back(std::move(note));
      }
      continue;
    }
    std::istringstream fields(line);
    OutcomeTuple outcome;
    std::string a3, b3;
    fields >> outcome.position >> outcome.alice_coin >> outcome.bob_coin;
    if (controlled) {
      std::string charlie;
      fields >> charlie;
      outcome.charlie = charlie;
    }
    fields >> a3 >> b3;
    std::string extra;
    if (!fields || (fields >> extra))
      throw DataFileError(origin + ":" + std::to_string(line_no) + ": malformed row");
    CorrectionPair pair{parse_pauli_string(a3), parse_pauli_string(b3)};
    if (!table.rows.emplace(outcome, std::move(pair)).second)
      throw DataFileError(origin + ":" + std::to_string(line_no) + ": duplicate outcome " +
                          outcome.display());
  }
  return table;
}

inline void validate_table_rows(const CorrectionTable& table) {
  const auto outcomes = enumerate_outcomes(table.key.protocol, table.key.topology);
  if (table.rows.size() != outcomes.size() ||
      table.rows.size() != expected_row_count(table.key))
    throw DataFileError("table has " + std::to_string(table.rows.size()) + " rows, expected " +
                        std::to_string(expected_row_count(table.key)));
  for (const OutcomeTuple& outcome : outcomes)
    if (!table.find(outcome))
      throw DataFileError("table is missing outcome " + outcome.display());
}

// Loads and validates the transcribed table for a configuration. The two
// C4 keys reuse the K2 files with positions relabeled a_i -> at_i.
inline CorrectionTable load_reference_table(TableKey key,
                                            const std::filesystem::path& dir = default_table_dir()) {
  const std::filesystem::path path = dir / table_filename(key);
  std::ifstream in(path);
  if (!in) throw DataFileError("cannot open table file " + path.string());

  TableKey file_key = key;
  if (key.topology == Topology::Cycle4) file_key.topology = Topology::TwoVertex;
  CorrectionTable loaded = parse_table(in, file_key, path.string());

  CorrectionTable table{key, Provenance::Reference, {}, std::move(loaded.notes)};
  if (key.topology == Topology::Cycle4) {
    for (auto& [outcome, pair] : loaded.rows) {
      OutcomeTuple relabeled = outcome;
      relabeled.position = "at" + outcome.position.substr(1);
      table.rows.emplace(std::move(relabeled), std::move(pair));
    }
    table.notes.push_back("positions relabeled a_i -> at_i from the two-vertex table");
  } else {
    table.rows = std::move(loaded.rows);
  }
  validate_table_rows(table);
  return table;
}

inline std::string format_table(const CorrectionTable& table) {
  std::ostringstream out;
  out << "# correction table: " << to_string(table.key.protocol) << " "
      << to_string(table.key.topology) << " ("
      << (table.provenance == Provenance::Reference ? "reference" : "oracle-derived") << ")\n";
  out << "# columns: position alice_coin bob_coin"
      << (table.key.protocol == Protocol::Controlled ? " charlie" : "") << " a3 b3\n";
  for (const std::string& note : table.notes) out << "# note: " << note << "\n";
  for (const auto& [outcome, pair] : table.rows) {
    out << outcome.position << " " << outcome.alice_coin << " " << outcome.bob_coin;
    if (outcome.charlie) out << " " << *outcome.charlie;
    out << " " << pauli_string(pair.a3) << " " << pauli_string(pair.b3) << "\n";
  }
  return out.str();
}

inline constexpr std::uint64_t kOracleSeed = 0x5eed0417u;

// Exhaustive search over the sixteen Pauli-class pairs {I,X,Z,XZ} on A3
// times {I,X,Z,XZ} on B3. A candidate is valid only if it reaches the
// fidelity threshold at every generated target pair; a correction must
// work for all targets, so three generic pairs pin down the class.
inline std::vector<CorrectionPair> derive_correction(const ProtocolEngine& engine,
                                                     const OutcomeTuple& outcome,
                                                     std::uint64_t seed = kOracleSeed,
                                                     int target_pairs = 3) {
  TargetGenerator gen(seed);
  std::vector<std::pair<std::array<double, 2>, std::array<double, 2>>> targets;
  for (int i = 0; i < target_pairs; ++i) targets.push_back({gen.next(), gen.next()});

  std::vector<CorrectionPair> valid;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CorrectionPair candidate{canonical_sequence({(a & 1) != 0, (a & 2) != 0}),
                               canonical_sequence({(b & 1) != 0, (b & 2) != 0})};
      bool ok = true;
      for (const auto& [alice, bob] : targets) {
        if (engine.corrected_fidelity(outcome, candidate, alice, bob) < kFidelityPass) {
          ok = false;
          break;
        }
      }
      if (ok) valid.push_back(std::move(candidate));
    }
  }
  if (valid.empty())
    throw Error("no valid correction for outcome " + outcome.display() +
                " (transcription or wiring bug)");
  return valid;
}

inline CorrectionTable derive_table(Protocol protocol, Topology topology,
                                    std::uint64_t seed = kOracleSeed) {
  const ProtocolEngine engine(protocol, topology);
  CorrectionTable table{{protocol, topology}, Provenance::Derived, {}, {}};
  for (const OutcomeTuple& outcome : enumerate_outcomes(protocol, topology)) {
    std::vector<CorrectionPair> valid = derive_correction(engine, outcome, seed);
    if (valid.size() != 1)
      table.notes.push_back("degenerate outcome " + outcome.display() + ": " +
                            std::to_string(valid.size()) + " valid classes");
    table.rows.emplace(outcome, std::move(valid.front()));
  }
  return table;
}

// Per-row reconciliation of a reference table against the oracle. A row
// matches when the reference product, reduced mod phase, lands in the
// oracle's class: equivalent products of different lengths (XZX vs Z up to
// sign) compare equal.
struct TableDiff {
  enum class RowStatus { Match, ReferenceInvalid, MissingRow };

  struct Row {
    OutcomeTuple outcome;
    RowStatus status = RowStatus::Match;
    std::string reference;  // "a3,b3" as listed, empty when missing
    std::string derived;    // canonical class pair, empty when missing
  };

  std::vector<Row> rows;
  std::size_t matches = 0;
  std::size_t invalid = 0;
  std::size_t missing = 0;
  std::vector<std::string> notes;
};

inline std::string correction_display(const CorrectionPair& pair) {
  return pauli_string(pair.a3) + "," + pauli_string(pair.b3);
}

inline TableDiff diff_tables(const CorrectionTable& reference, const CorrectionTable& derived) {
  if (!(reference.key == derived.key))
    throw Error("diff_tables: configuration keys differ");

  TableDiff diff;
  diff.notes = reference.notes;
  diff.notes.insert(diff.notes.end(), derived.notes.begin(), derived.notes.end());

  std::map<OutcomeTuple, int, OutcomeOrder> keys;
  for (const auto& [outcome, pair] : reference.rows) keys[outcome] |= 1;
  for (const auto& [outcome, pair] : derived.rows) keys[outcome] |= 2;

  for (const auto& [outcome, sides] : keys) {
    TableDiff::Row row{outcome, TableDiff::RowStatus::Match, "", ""};
    if (sides != 3) {
      row.status = TableDiff::RowStatus::MissingRow;
      if (sides & 1) row.reference = correction_display(*reference.find(outcome));
      if (sides & 2) row.derived = correction_display(*derived.find(outcome));
      ++diff.missing;
    } else {
      const CorrectionPair& ref = *reference.find(outcome);
      const CorrectionPair& oracle = *derived.find(outcome);
      row.reference = correction_display(ref);
      row.derived = correction_display(canonical_correction(oracle));
      if (canonical_correction(ref) == canonical_correction(oracle)) {
        ++diff.matches;
      } else {
        row.status = TableDiff::RowStatus::ReferenceInvalid;
        ++diff.invalid;
      }
    }
    diff.rows.push_back(std::move(row));
  }
  return diff;
}

// Runs every table row against `trials` generated target pairs and records
// the corrected fidelity of each run. Rows are visited in canonical order
// with a per-row generator, so results do not depend on row selection.
inline std::vector<VerificationResult> verify_table(const ProtocolConfig& config,
                                                    const CorrectionTable& table,
                                                    int trials,
                                                    std::uint64_t seed = kOracleSeed) {
  config.validate();
  if (!(TableKey{config.protocol, config.topology} == table.key))
    throw Error("verify_table: table does not match the configuration");
  if (trials < 1) throw Error("verify_table: trials must be >= 1");

  const ProtocolEngine engine(config.protocol, config.topology);
  std::vector<VerificationResult> results;
  results.reserve(table.rows.size() * static_cast<std::size_t>(trials));

  std::uint64_t row_index = 0;
  for (const auto& [outcome, correction] : table.rows) {
    TargetGenerator gen(seed + 0x9e3779b97f4a7c15ull * (row_index + 1));
    for (int t = 0; t < trials; ++t) {
      const auto alice = gen.next();
      const auto bob = gen.next();
      const auto cascade = engine.measure_cascade(outcome, alice, bob);
      const StateVector corrected = apply_correction(cascade.post_state, correction);
      const double fidelity =
          fidelity_up_to_phase(corrected, engine.target_state(outcome, alice, bob));
      results.push_back(
          {outcome, cascade.joint_probability, fidelity, correction, alice, bob});
    }
    ++row_index;
  }
  return results;
}

}  // namespace qwalk

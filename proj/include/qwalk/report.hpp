// report.hpp
//
// Structured run reports for the CLI. Reports render to an aligned text
// form for humans and to JSON for machines; the JSON form round-trips
// (parse(render(r)) == r) and is byte-identical for identical inputs.

#pragma once

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace qwalk {

using Json = nlohmann::ordered_json;

struct StepSummary {
  int step = 0;
  std::uint64_t term_count = 0;
  double amplitude_magnitude = 0.0;

  bool operator==(const StepSummary&) const = default;
};

struct TermRecord {
  std::string ket;
  double re = 0.0;
  double im = 0.0;

  bool operator==(const TermRecord&) const = default;
};

struct OutcomeProbability {
  std::string outcome;
  double probability = 0.0;

  bool operator==(const OutcomeProbability&) const = default;
};

struct RowVerification {
  std::string outcome;
  std::string a3;
  std::string b3;
  double min_fidelity = 0.0;
  bool pass = false;

  bool operator==(const RowVerification&) const = default;
};

struct FixtureDiffRecord {
  std::string state_name;
  std::uint64_t matching_terms = 0;
  std::vector<std::string> missing_terms;
  std::vector<std::string> unexpected_terms;
  std::vector<std::string> notes;

  bool operator==(const FixtureDiffRecord&) const = default;
};

struct ProbabilityClaim {
  std::string description;
  double computed = 0.0;
  double reference = 0.0;
  bool agrees = false;

  bool operator==(const ProbabilityClaim&) const = default;
};

struct DiffRecord {
  std::string outcome;
  std::string status;     // match | reference-invalid | missing-row
  std::string reference;  // "a3,b3" as transcribed
  std::string derived;    // oracle canonical class

  bool operator==(const DiffRecord&) const = default;
};

struct RunReport {
  std::string command;
  std::string protocol;
  std::string topology;
  std::uint64_t seed = 0;
  int trials = 0;
  int upto = -1;
  std::vector<StepSummary> steps;
  std::vector<TermRecord> terms;
  std::vector<OutcomeProbability> outcome_probabilities;
  std::vector<RowVerification> rows;
  std::uint64_t rows_passed = 0;
  std::uint64_t rows_failed = 0;
  std::vector<FixtureDiffRecord> fixture_diffs;
  std::vector<ProbabilityClaim> probability_claims;
  std::uint64_t diff_matches = 0;
  std::uint64_t diff_invalid = 0;
  std::uint64_t diff_missing = 0;
  std::vector<DiffRecord> table_diff;  // non-matching rows only
  std::vector<std::string> notes;

  bool operator==(const RunReport&) const = default;

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["protocol"] = protocol;
    j["topology"] = topology;
    j["seed"] = seed;
    j["trials"] = trials;
    j["upto"] = upto;
    j["steps"] = Json::array();
    for (const auto& s : steps)
      j["steps"].push_back({{"step", s.step},
                            {"term_count", s.term_count},
                            {"amplitude_magnitude", s.amplitude_magnitude}});
    j["terms"] = Json::array();
    for (const auto& t : terms)
      j["terms"].push_back({{"ket", t.ket}, {"re", t.re}, {"im", t.im}});
    j["outcome_probabilities"] = Json::array();
    for (const auto& p : outcome_probabilities)
      j["outcome_probabilities"].push_back(
          {{"outcome", p.outcome}, {"probability", p.probability}});
    j["rows"] = Json::array();
    for (const auto& r : rows)
      j["rows"].push_back({{"outcome", r.outcome},
                           {"a3", r.a3},
                           {"b3", r.b3},
                           {"min_fidelity", r.min_fidelity},
                           {"pass", r.pass}});
    j["rows_passed"] = rows_passed;
    j["rows_failed"] = rows_failed;
    j["fixture_diffs"] = Json::array();
    for (const auto& d : fixture_diffs)
      j["fixture_diffs"].push_back({{"state", d.state_name},
                                    {"matching_terms", d.matching_terms},
                                    {"missing_terms", d.missing_terms},
                                    {"unexpected_terms", d.unexpected_terms},
                                    {"notes", d.notes}});
    j["probability_claims"] = Json::array();
    for (const auto& c : probability_claims)
      j["probability_claims"].push_back({{"description", c.description},
                                         {"computed", c.computed},
                                         {"reference", c.reference},
                                         {"agrees", c.agrees}});
    j["diff_matches"] = diff_matches;
    j["diff_invalid"] = diff_invalid;
    j["diff_missing"] = diff_missing;
    j["table_diff"] = Json::array();
    for (const auto& d : table_diff)
      j["table_diff"].push_back({{"outcome", d.outcome},
                                 {"status", d.status},
                                 {"reference", d.reference},
                                 {"derived", d.derived}});
    j["notes"] = notes;
    return j;
  }

  static RunReport from_json(const Json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.protocol = j.at("protocol").get<std::string>();
    r.topology = j.at("topology").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<int>();
    r.upto = j.at("upto").get<int>();
    for (const auto& s : j.at("steps"))
      r.steps.push_back({s.at("step").get<int>(), s.at("term_count").get<std::uint64_t>(),
                         s.at("amplitude_magnitude").get<double>()});
    for (const auto& t : j.at("terms"))
      r.terms.push_back({t.at("ket").get<std::string>(), t.at("re").get<double>(),
                         t.at("im").get<double>()});
    for (const auto& p : j.at("outcome_probabilities"))
      r.outcome_probabilities.push_back(
          {p.at("outcome").get<std::string>(), p.at("probability").get<double>()});
    for (const auto& v : j.at("rows"))
      r.rows.push_back({v.at("outcome").get<std::string>(), v.at("a3").get<std::string>(),
                        v.at("b3").get<std::string>(), v.at("min_fidelity").get<double>(),
                        v.at("pass").get<bool>()});
    r.rows_passed = j.at("rows_passed").get<std::uint64_t>();
    r.rows_failed = j.at("rows_failed").get<std::uint64_t>();
    for (const auto& d : j.at("fixture_diffs"))
      r.fixture_diffs.push_back(
          {d.at("state").get<std::string>(), d.at("matching_terms").get<std::uint64_t>(),
           d.at("missing_terms").get<std::vector<std::string>>(),
           d.at("unexpected_terms").get<std::vector<std::string>>(),
           d.at("notes").get<std::vector<std::string>>()});
    for (const auto& c : j.at("probability_claims"))
      r.probability_claims.push_back(
          {c.at("description").get<std::string>(), c.at("computed").get<double>(),
           c.at("reference").get<double>(), c.at("agrees").get<bool>()});
    r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  }

  std::string render_machine() const { return to_json().dump(2) + "\n"; }

  static RunReport parse_machine(const std::string& text) {
    return from_json(Json::parse(text));
  }

  std::string render_text() const {
    std::ostringstream out;
    out << command << ": protocol=" << protocol << " topology=" << topology;
    if (command != "state") out << " seed=" << seed << " trials=" << trials;
    if (upto >= 0) out << " upto=" << upto;
    out << "\n";

    auto num = [](double v) {
      std::ostringstream s;
      s << std::setprecision(12) << v;
      return s.str();
    };

    for (const auto& s : steps)
      out << "  step " << s.step << ": " << s.term_count << " terms, |amplitude| = "
          << num(s.amplitude_magnitude) << "\n";
    if (!terms.empty()) {
      out << "  state terms (" << terms.size() << "):\n";
      for (const auto& t : terms) {
        out << "    |" << t.ket << ">  " << num(t.re);
        if (t.im != 0.0) out << (t.im > 0 ? " + " : " - ") << num(std::abs(t.im)) << "i";
        out << "\n";
      }
    }
    if (!outcome_probabilities.empty()) {
      out << "  outcome probabilities:\n";
      for (const auto& p : outcome_probabilities)
        out << "    " << p.outcome << "  " << num(p.probability) << "\n";
    }
    if (!rows.empty()) {
      out << "  rows: " << rows_passed << " pass, " << rows_failed << " fail\n";
      for (const auto& r : rows) {
        if (!r.pass)
          out << "    FAIL " << r.outcome << " (" << r.a3 << "," << r.b3
              << ") min fidelity " << num(r.min_fidelity) << "\n";
      }
    }
    for (const auto& d : fixture_diffs) {
      out << "  reference " << d.state_name << ": " << d.matching_terms << " terms match";
      if (d.missing_terms.empty() && d.unexpected_terms.empty()) {
        out << "\n";
      } else {
        out << ", " << d.missing_terms.size() << " simulated-only, "
            << d.unexpected_terms.size() << " transcription-only\n";
        for (const auto& k : d.missing_terms) out << "    simulated only: |" << k << ">\n";
        for (const auto& k : d.unexpected_terms)
          out << "    transcription only: |" << k << ">\n";
      }
      for (const auto& n : d.notes) out << "    note: " << n << "\n";
    }
    for (const auto& c : probability_claims)
      out << "  " << c.description << ": computed " << num(c.computed) << ", reference "
          << num(c.reference) << (c.agrees ? " (agrees)" : " (DISAGREES)") << "\n";
    for (const auto& n : notes) out << "  note: " << n << "\n";
    return out.str();
  }
};

}  // namespace qwalk

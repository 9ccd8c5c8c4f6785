#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgap/amplify.hpp"
#include "pgap/errors.hpp"
#include "pgap/game.hpp"
#include "pgap/pauli_sum.hpp"
#include "pgap/sparsify.hpp"
#include "pgap/spectra.hpp"

namespace pgap::io {

using json = nlohmann::ordered_json;

/// Schema violations in input documents. `where` names the field.
struct SchemaError : ParseError {
  using ParseError::ParseError;
};

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

/// {"n": int, "terms": [{"pauli": "...", "coeff": real}, ...]}; duplicates are summed.
inline Hamiltonian hamiltonian_from_json(const json& doc, double prune_tolerance = kDefaultPruneTolerance) {
  if (!doc.is_object()) throw SchemaError("hamiltonian: document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw SchemaError("hamiltonian: field \"n\" must be a positive integer");
  }
  const auto n = doc["n"].get<std::size_t>();
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw SchemaError("hamiltonian: field \"terms\" must be an array");
  }
  std::vector<std::pair<PauliString, double>> terms;
  std::size_t index = 0;
  for (const auto& t : doc["terms"]) {
    const std::string where = "hamiltonian: terms[" + std::to_string(index++) + "]";
    if (!t.is_object()) throw SchemaError(where + " must be an object");
    if (!t.contains("pauli") || !t["pauli"].is_string()) {
      throw SchemaError(where + ": field \"pauli\" must be a string");
    }
    if (!t.contains("coeff") || !t["coeff"].is_number()) {
      throw SchemaError(where + ": field \"coeff\" must be a number");
    }
    const auto text = t["pauli"].get<std::string>();
    PauliString p;
    try {
      p = PauliString::parse(text);
    } catch (const ParseError& e) {
      throw SchemaError(where + ": field \"pauli\": " + e.what());
    }
    if (p.size() != n) {
      throw SchemaError(where + ": field \"pauli\" has length " + std::to_string(p.size()) + ", expected n = " +
                        std::to_string(n));
    }
    const double c = t["coeff"].get<double>();
    if (!std::isfinite(c)) throw SchemaError(where + ": field \"coeff\" is not finite");
    terms.emplace_back(std::move(p), c);
  }
  return Hamiltonian(n, terms, prune_tolerance);
}

inline json to_json(const Hamiltonian& h) {
  json terms = json::array();
  for (const auto& [p, c] : h.terms()) terms.push_back({{"pauli", p.str()}, {"coeff", c}});
  return {{"n", h.num_qubits()}, {"terms", std::move(terms)}};
}

inline Hamiltonian load_hamiltonian(const std::string& path, double prune_tolerance = kDefaultPruneTolerance) {
  try {
    return hamiltonian_from_json(read_json_file(path), prune_tolerance);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

/// {"n": int, "amplitudes": [[re, im], ...]}; renormalized when within 1e-6 of unit norm.
inline StateVector state_from_json(const json& doc) {
  if (!doc.is_object()) throw SchemaError("state: document must be an object");
  if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw SchemaError("state: field \"n\" must be a positive integer");
  }
  const auto n = doc["n"].get<std::size_t>();
  if (n > kMatrixFreeLimit) throw CapacityError("state: n above " + std::to_string(kMatrixFreeLimit));
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw SchemaError("state: field \"amplitudes\" must be an array");
  }
  const auto& arr = doc["amplitudes"];
  if (arr.size() != (std::size_t{1} << n)) {
    throw SchemaError("state: field \"amplitudes\" has " + std::to_string(arr.size()) + " entries, expected 2^n = " +
                      std::to_string(std::size_t{1} << n));
  }
  std::vector<cplx> amps;
  amps.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& a = arr[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw SchemaError("state: amplitudes[" + std::to_string(i) + "] must be a [re, im] pair");
    }
    amps.emplace_back(a[0].get<double>(), a[1].get<double>());
  }
  try {
    return StateVector::normalized(n, std::move(amps), 1e-6);
  } catch (const PreconditionError& e) {
    throw SchemaError(std::string("state: ") + e.what());
  }
}

inline json to_json(const StateVector& s) {
  json amps = json::array();
  for (const auto& a : s.amplitudes()) amps.push_back({a.real(), a.imag()});
  return {{"n", s.num_qubits()}, {"amplitudes", std::move(amps)}};
}

inline StateVector load_state(const std::string& path) {
  try {
    return state_from_json(read_json_file(path));
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

/// Infinite p is written as the string "inf" since JSON has no infinity.
inline json extended_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json to_json(const LemmaReport& r) {
  return {
      {"k", r.k},
      {"p", extended_real(r.p)},
      {"q", r.q},
      {"lambda_in", r.lambda_in},
      {"lambda_out_exact", r.lambda_out_exact},
      {"lambda_out_predicted", r.lambda_out_predicted},
      {"yes_lower_bound", r.yes_lower_bound},
      {"no_upper_bound", r.no_upper_bound},
      {"no_lower_bound", r.no_lower_bound},
      {"pauli1_in", r.pauli1_in},
      {"pauli1_out", r.pauli1_out},
      {"pauli1_bound", r.pauli1_bound},
      {"gap_lower_bound", r.gap_lower_bound},
      {"gap_before_chain", r.gap_before_chain},
      {"gap_in_regime", r.gap_in_regime},
      {"gap_chain_holds", r.gap_chain_holds},
      {"no_distance_absolute", r.no_distance_absolute},
      {"no_distance_half", r.no_distance_half},
      {"promise_case", to_string(r.promise_case)},
      {"eigen_identity_holds", r.eigen_identity_holds},
      {"pauli_bound_holds", r.pauli_bound_holds},
      {"promise_bound_holds", r.promise_bound_holds},
      {"operator_norm_holds", r.operator_norm_holds},
      {"all_bounds_hold", r.all_bounds_hold},
  };
}

inline constexpr std::uint64_t kMaxRoundsInJson = 10000;

inline json to_json(const GameTranscript& t) {
  json out = {
      {"shots", t.shots},
      {"seed", t.seed},
      {"accepted", t.accepted},
      {"accept_frequency", t.accept_frequency},
      {"std_error", t.std_error},
      {"exact_probability", t.exact_probability},
      {"within_4_std_error", std::abs(t.accept_frequency - t.exact_probability) <= 4.0 * t.std_error},
  };
  if (t.shots <= kMaxRoundsInJson) {
    json rounds = json::array();
    for (const auto& r : t.rounds) {
      rounds.push_back({{"sampled_term", t.terms[r.term_index].str()},
                        {"coeff_sign", r.coeff_sign},
                        {"outcome", r.outcome},
                        {"accepted", r.accepted}});
    }
    out["rounds"] = std::move(rounds);
  } else {
    out["rounds_elided"] = true;
  }
  return out;
}

inline std::string transcript_csv(const GameTranscript& t) {
  std::ostringstream os;
  os << "round,sampled_term,coeff_sign,outcome,accepted\n";
  for (std::size_t i = 0; i < t.rounds.size(); ++i) {
    const auto& r = t.rounds[i];
    os << i << ',' << t.terms[r.term_index].str() << ',' << r.coeff_sign << ',' << r.outcome << ','
       << (r.accepted ? 1 : 0) << '\n';
  }
  return os.str();
}

inline json to_json(const SparsifyReport& r) {
  return {
      {"n", r.n},
      {"m", r.m},
      {"delta", r.delta},
      {"bound", r.bound},
      {"bound_vacuous", r.bound_vacuous},
      {"empirical_failure_rate", r.empirical_failure_rate},
      {"mean_deviation", r.mean_deviation},
      {"terms_before", r.terms_before},
      {"terms_after_mean", r.terms_after_mean},
      {"pauli1_before", r.pauli1_before},
      {"pauli1_after_mean", r.pauli1_after_mean},
      {"deviations", r.deviations},
  };
}

inline std::string deviations_csv(const SparsifyReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "trial,deviation\n";
  for (std::size_t i = 0; i < r.deviations.size(); ++i) os << i << ',' << r.deviations[i] << '\n';
  return os.str();
}

/// Two-column key,value table for flat reports; nested values are JSON-encoded.
inline std::string flat_csv(const json& doc) {
  std::ostringstream os;
  os << "key,value\n";
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object() || value.is_array()) continue;
    os << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return os.str();
}

}  // namespace pgap::io

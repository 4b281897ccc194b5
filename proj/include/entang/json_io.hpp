#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "entang/named_states.hpp"
#include "entang/state.hpp"
#include "entang/verdicts.hpp"
#include "entang/version.hpp"

namespace entang {

using Json = nlohmann::json;

namespace json_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw InputError("at " + path + ": " + msg);
}

inline Statistics parse_statistics(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "distinguishable") return Statistics::Distinguishable;
  if (s == "fermion") return Statistics::Fermion;
  if (s == "boson") return Statistics::Boson;
  fail(path, "unknown statistics '" + s + "'");
}

inline Complex parse_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  fail(path, "expected a number or [re, im] pair");
}

inline Vector parse_vector(const Json& j, Index dim, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  if (static_cast<Index>(j.size()) != dim)
    fail(path, "expected " + std::to_string(dim) + " components");
  Vector v(dim);
  for (Index i = 0; i < dim; ++i)
    v[i] = parse_complex(j[static_cast<std::size_t>(i)],
                         path + "[" + std::to_string(i) + "]");
  return v;
}

}  // namespace json_detail

/// Parses a state document.  Exactly one construction may be present:
/// a sparse amplitude list, a product (optionally (anti)symmetrized), or a
/// named golden state.
inline StateVector load_state_document(const Json& doc) {
  namespace jd = json_detail;
  if (!doc.is_object()) jd::fail("$", "expected an object");
  if (doc.contains("schema_version") &&
      doc["schema_version"].get<int>() != kSchemaVersion)
    jd::fail("$.schema_version", "unsupported schema version");
  if (!doc.contains("construction")) jd::fail("$", "missing 'construction'");
  const Json& c = doc["construction"];
  if (!c.is_object()) jd::fail("$.construction", "expected an object");

  const int present = static_cast<int>(c.contains("amplitudes")) +
                      static_cast<int>(c.contains("product")) +
                      static_cast<int>(c.contains("named"));
  if (present != 1)
    jd::fail("$.construction",
             "exactly one of 'amplitudes', 'product', 'named' required");

  std::optional<Statistics> stat;
  if (doc.contains("statistics"))
    stat = jd::parse_statistics(doc["statistics"], "$.statistics");

  if (c.contains("named")) {
    const std::string name = c["named"].get<std::string>();
    auto s = named_state(name, stat);
    if (!s) jd::fail("$.construction.named", "unknown named state '" + name + "'");
    return *s;
  }

  if (!doc.contains("particles")) jd::fail("$", "missing 'particles'");
  if (!doc.contains("dim")) jd::fail("$", "missing 'dim'");
  const int n = doc["particles"].get<int>();
  const Index d = doc["dim"].get<Index>();
  if (n < 1) jd::fail("$.particles", "need at least one particle");
  if (d < 1) jd::fail("$.dim", "need dim >= 1");
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    for (const auto& l : doc["labels"]) labels.push_back(l.get<std::string>());
    if (static_cast<Index>(labels.size()) != d)
      jd::fail("$.labels", "label count must equal dim");
  }
  const ModeSpace mode(d, labels);
  std::vector<ModeSpace> modes(static_cast<std::size_t>(n), mode);

  if (c.contains("product")) {
    const Json& p = c["product"];
    if (!p.is_array() || static_cast<int>(p.size()) != n)
      jd::fail("$.construction.product", "expected one factor per particle");
    std::vector<Vector> factors;
    for (int i = 0; i < n; ++i)
      factors.push_back(jd::parse_vector(
          p[static_cast<std::size_t>(i)], d,
          "$.construction.product[" + std::to_string(i) + "]"));
    StateVector product = make_factorized(factors, modes);
    const bool anti = c.value("then_antisymmetrize", false);
    const bool sym = c.value("then_symmetrize", false);
    if (anti && sym)
      jd::fail("$.construction", "cannot both antisymmetrize and symmetrize");
    if (anti) {
      auto s = antisymmetrize(product);
      if (!s)
        jd::fail("$.construction.product",
                 "antisymmetrization annihilates this product");
      if (stat && *stat != Statistics::Fermion)
        jd::fail("$.statistics", "antisymmetrized state must be 'fermion'");
      return *s;
    }
    if (sym) {
      if (stat && *stat != Statistics::Boson)
        jd::fail("$.statistics", "symmetrized state must be 'boson'");
      return symmetrize(product);
    }
    if (stat && *stat != Statistics::Distinguishable) {
      // Re-tag a plain product with identical-particle statistics; the
      // constructor will reject it unless the symmetry actually holds.
      return StateVector(modes, product.amplitudes(), *stat);
    }
    return product;
  }

  // Sparse amplitude list.
  const Json& amp = c["amplitudes"];
  if (!amp.is_array() || amp.empty())
    jd::fail("$.construction.amplitudes", "expected a nonempty array");
  Index total = 1;
  for (int i = 0; i < n; ++i) total *= d;
  Vector amps = Vector::Zero(total);
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < amp.size(); ++e) {
    const std::string path =
        "$.construction.amplitudes[" + std::to_string(e) + "]";
    const Json& entry = amp[e];
    if (!entry.is_object() || !entry.contains("index"))
      jd::fail(path, "expected an object with 'index'");
    const Json& ji = entry["index"];
    if (!ji.is_array() || static_cast<int>(ji.size()) != n)
      jd::fail(path + ".index", "expected one index per particle");
    for (int s = 0; s < n; ++s) {
      const Index v = ji[static_cast<std::size_t>(s)].get<Index>();
      if (v < 0 || v >= d) jd::fail(path + ".index", "index out of range");
      idx[static_cast<std::size_t>(s)] = v;
    }
    amps[detail::flatten(idx, std::vector<Index>(
                                  static_cast<std::size_t>(n), d))] =
        Complex(entry.value("re", 0.0), entry.value("im", 0.0));
  }
  try {
    return StateVector(modes, amps, stat.value_or(Statistics::Distinguishable));
  } catch (const StatisticsError& e) {
    jd::fail("$.construction.amplitudes", e.what());
  } catch (const InputError& e) {
    jd::fail("$.construction.amplitudes", e.what());
  }
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i)
    out.push_back({v[i].real(), v[i].imag()});
  return out;
}

inline Json to_json(const Verdict& v, const StateVector& state) {
  Json j;
  j["entangled"] = v.entangled;
  j["criterion"] = to_string(v.criterion);
  j["diagnostics"] = v.diagnostics;
  if (!v.witness_factors.empty()) {
    Json w = Json::array();
    for (const auto& f : v.witness_factors) w.push_back(to_json(f));
    j["witness_factors"] = w;
    Json labels = Json::array();
    for (const auto& f : v.witness_factors) {
      Index dominant = 0;
      f.cwiseAbs().maxCoeff(&dominant);
      labels.push_back(state.mode(0).label(dominant));
    }
    j["witness_labels"] = labels;
  }
  return j;
}

inline Json to_json(const PropertyReport& rep) {
  Json j;
  j["level"] = to_string(rep.level);
  j["range_rank"] = rep.range_projector.rank;
  Json st = Json::array();
  for (const auto& s : rep.statements) {
    Json js;
    js["borel_set"] = s.borel_set;
    js["sharp"] = s.sharp;
    js["full_spectrum"] = s.full_spectrum;
    st.push_back(js);
  }
  j["statements"] = st;
  return j;
}

/// Envelope every command emits: command echo, payload, tool version.
inline Json make_report(const std::string& command, Json payload) {
  Json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["report"] = std::move(payload);
  return j;
}

}  // namespace entang

// Command-line front end: parses JSON state documents, dispatches to the
// decision procedures and emits prose or JSON reports.
//
// Exit codes: 0 = successful classification (whatever the verdict),
//             2 = input error, 3 = internal consistency failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "entang/approx.hpp"
#include "entang/json_io.hpp"
#include "entang/manybody.hpp"
#include "entang/selftest.hpp"

namespace {

using namespace entang;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw InputError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

StateVector load_state_file(const std::string& path) {
  return load_state_document(load_json_file(path));
}

Matrix load_matrix(const std::string& spec) {
  // Inline JSON if it starts with '['; otherwise a file path.
  Json j;
  if (!spec.empty() && spec.front() == '[') {
    try {
      j = Json::parse(spec);
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("invalid inline matrix: ") + e.what());
    }
  } else {
    j = load_json_file(spec);
  }
  if (!j.is_array() || j.empty())
    throw InputError("matrix: expected an array of rows");
  const Index d = static_cast<Index>(j.size());
  Matrix m(d, d);
  for (Index r = 0; r < d; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != d)
      throw InputError("matrix: expected a square array");
    for (Index c = 0; c < d; ++c)
      m(r, c) = json_detail::parse_complex(
          row[static_cast<std::size_t>(c)],
          "matrix[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

void emit(const Json& report, bool as_json, const std::string& prose) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << prose;
}

std::string describe_verdict(const Verdict& v, const StateVector& state) {
  std::ostringstream os;
  os << (v.entangled ? "entangled" : "non-entangled") << " (criterion "
     << to_string(v.criterion) << ")\n";
  if (!v.witness_factors.empty()) {
    os << "witness factors (dominant basis states):";
    for (const auto& f : v.witness_factors) {
      Index dominant = 0;
      f.cwiseAbs().maxCoeff(&dominant);
      os << " " << state.mode(0).label(dominant);
    }
    os << "\n";
  }
  for (const auto& [k, val] : v.diagnostics)
    os << "  " << k << " = " << val << "\n";
  return os.str();
}

std::string describe_properties(const PropertyReport& rep) {
  std::ostringstream os;
  os << "objective properties: " << to_string(rep.level)
     << " (range rank " << rep.range_projector.rank << ")\n";
  if (rep.level == PropertyLevel::None)
    os << "  the subsystem possesses no sharp or unsharp property\n";
  return os.str();
}

Verdict classify_state(const StateVector& state) {
  switch (state.statistics()) {
    case Statistics::Distinguishable:
      return classify_distinguishable_pair(state);
    case Statistics::Fermion:
      return classify_fermion_pair(state);
    case Statistics::Boson:
      return classify_boson_pair(state);
  }
  throw InputError("classify: unsupported statistics");
}

unsigned long long default_seed() {
  if (const char* env = std::getenv("ENTANGPROPS_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 20240824ull;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entangprops: exact entanglement and property classification "
               "for small multi-particle pure states"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a machine-readable JSON report");

  std::string in_path, sigma_path, phi_path, a_spec, b_spec;
  int slot = 0, m_card = 1, trials = 50;
  double tol = 1e-10, sep = 0.0, decay = 1e-8, threshold = -100.0;
  unsigned long long seed = default_seed();
  std::string unit = "cm";

  auto* classify = app.add_subcommand(
      "classify", "entangled / non-entangled verdict for a pair state");
  classify->add_option("--in", in_path, "state document (JSON)")->required();
  classify->add_option("--tol", tol, "verdict tolerance");

  auto* properties = app.add_subcommand(
      "properties", "objective-property report for one subsystem");
  properties->add_option("--in", in_path)->required();
  properties->add_option("--slot", slot, "subsystem slot (default 0)");

  auto* correlate = app.add_subcommand(
      "correlate", "check <A⊗B> = <A><B> for two Hermitian observables");
  correlate->add_option("--in", in_path)->required();
  correlate->add_option("--a", a_spec, "observable A (file or inline JSON)")
      ->required();
  correlate->add_option("--b", b_spec, "observable B (file or inline JSON)")
      ->required();
  correlate->add_option("--tol", tol, "factorization tolerance");

  auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt decomposition");
  schmidt_cmd->add_option("--in", in_path)->required();
  auto* slater_cmd = app.add_subcommand("slater", "Slater decomposition");
  slater_cmd->add_option("--in", in_path)->required();
  auto* takagi_cmd = app.add_subcommand("takagi", "Takagi factorization");
  takagi_cmd->add_option("--in", in_path)->required();

  auto* opo = app.add_subcommand(
      "opo", "one-particle orthogonality residual between two fermion states");
  opo->add_option("--sigma", sigma_path)->required();
  opo->add_option("--phi", phi_path)->required();

  auto* subgroup = app.add_subcommand(
      "subgroup", "detect non-entangled subgroups of an N-fermion state");
  subgroup->add_option("--in", in_path)->required();
  subgroup->add_option("--m", m_card, "cardinality of the first subgroup")
      ->required();

  auto* overlap = app.add_subcommand(
      "overlap", "two-center overlap estimate for separated electron groups");
  overlap->add_option("--d", sep, "center separation")->required();
  overlap->add_option("--a", decay, "orbital decay length");
  overlap->add_option("--unit", unit, "length unit label (informational)");
  overlap->add_option("--threshold", threshold,
                      "log10 overlap threshold for the verdict");

  auto* selftest = app.add_subcommand(
      "selftest", "run the randomized property suites");
  selftest->add_option("--seed", seed, "master seed (ENTANGPROPS_SEED)");
  selftest->add_option("--trials", trials, "trials per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (classify->parsed()) {
      const StateVector state = load_state_file(in_path);
      const Verdict v = classify_state(state);
      Json payload = to_json(v, state);
      std::string prose = describe_verdict(v, state);
      if (state.particles() == 2) {
        const PropertyReport rep = property_report(state, 0);
        payload["properties"] = to_json(rep);
        prose += describe_properties(rep);
      }
      emit(make_report("classify", payload), as_json, prose);
      return kExitOk;
    }
    if (properties->parsed()) {
      const StateVector state = load_state_file(in_path);
      const PropertyReport rep = property_report(state, slot);
      emit(make_report("properties", to_json(rep)), as_json,
           describe_properties(rep));
      return kExitOk;
    }
    if (correlate->parsed()) {
      const StateVector state = load_state_file(in_path);
      auto [ok, residual] =
          correlation_factorizes(state, load_matrix(a_spec),
                                 load_matrix(b_spec), tol);
      Json payload;
      payload["factorizes"] = ok;
      payload["residual"] = residual;
      std::ostringstream os;
      os << (ok ? "factorizes" : "does not factorize") << " (residual "
         << residual << ")\n";
      emit(make_report("correlate", payload), as_json, os.str());
      return kExitOk;
    }
    if (schmidt_cmd->parsed()) {
      const auto sd = entang::schmidt(load_state_file(in_path));
      Json payload;
      payload["coefficients"] = sd.coefficients;
      payload["rank"] = sd.rank;
      std::ostringstream os;
      os << "Schmidt rank " << sd.rank << ", coefficients:";
      for (double c : sd.coefficients) os << " " << c;
      os << "\n";
      emit(make_report("schmidt", payload), as_json, os.str());
      return kExitOk;
    }
    if (slater_cmd->parsed()) {
      const auto sl = entang::slater(load_state_file(in_path));
      Json payload;
      payload["coefficients"] = sl.coefficients;
      payload["slater_rank"] = sl.slater_rank;
      std::ostringstream os;
      os << "Slater rank " << sl.slater_rank << ", pair coefficients:";
      for (double c : sl.coefficients) os << " " << c;
      os << "\n";
      emit(make_report("slater", payload), as_json, os.str());
      return kExitOk;
    }
    if (takagi_cmd->parsed()) {
      const auto tk = entang::takagi(load_state_file(in_path));
      Json payload;
      payload["values"] = tk.values;
      payload["rank"] = tk.rank;
      std::ostringstream os;
      os << "Takagi rank " << tk.rank << ", values:";
      for (double v : tk.values) os << " " << v;
      os << "\n";
      emit(make_report("takagi", payload), as_json, os.str());
      return kExitOk;
    }
    if (opo->parsed()) {
      const double residual = opo_residual(load_state_file(sigma_path),
                                           load_state_file(phi_path));
      Json payload;
      payload["opo_residual"] = residual;
      payload["one_particle_orthogonal"] = residual < kOpoTol;
      std::ostringstream os;
      os << "one-particle orthogonality residual " << residual << " ("
         << (residual < kOpoTol ? "orthogonal" : "not orthogonal") << ")\n";
      emit(make_report("opo", payload), as_json, os.str());
      return kExitOk;
    }
    if (subgroup->parsed()) {
      const StateVector state = load_state_file(in_path);
      const auto fact = detect_partition(state, m_card);
      Json payload;
      payload["found"] = fact.has_value();
      std::ostringstream os;
      if (fact) {
        payload["opo_residual"] = fact->opo_residual;
        payload["pi_m"] = to_json(fact->pi_m.amplitudes());
        payload["phi_k"] = to_json(fact->phi_k.amplitudes());
        os << "found a non-entangled subgroup split of cardinality "
           << m_card << " + " << state.particles() - m_card << "\n";
      } else {
        os << "no non-entangled subgroup split of cardinality " << m_card
           << " exists\n";
      }
      emit(make_report("subgroup", payload), as_json, os.str());
      return kExitOk;
    }
    if (overlap->parsed()) {
      const OrbitalModel model(decay, sep);
      const ApproxVerdict v = classify_separated_groups(model, threshold);
      Json payload;
      payload["log10_overlap"] = v.log10_overlap;
      payload["threshold_log10"] = v.threshold_log10;
      payload["almost_nonentangled"] = v.almost_nonentangled;
      payload["caveat"] = v.caveat;
      payload["unit"] = unit;
      std::ostringstream os;
      os << "log10 overlap = " << v.log10_overlap << " at d = " << sep << " "
         << unit << ", a = " << decay << " " << unit << "\n"
         << (v.almost_nonentangled ? "almost non-entangled"
                                   : "not separable to the threshold")
         << " (threshold 1e" << v.threshold_log10 << ")\n";
      emit(make_report("overlap", payload), as_json, os.str());
      return kExitOk;
    }
    if (selftest->parsed()) {
      const auto results = run_selftest(seed, trials);
      Json payload = Json::array();
      bool all = true;
      std::ostringstream os;
      for (const auto& r : results) {
        all = all && r.passed;
        Json jr;
        jr["name"] = r.name;
        jr["passed"] = r.passed;
        jr["detail"] = r.detail;
        payload.push_back(jr);
        os << (r.passed ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) os << " (" << r.detail << ")";
        os << "\n";
      }
      emit(make_report("selftest", payload), as_json, os.str());
      return all ? kExitOk : kExitInternal;
    }
  } catch (const InternalCheckError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}

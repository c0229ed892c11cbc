#ifndef DGLFORGE_CERTIFICATE_HPP
#define DGLFORGE_CERTIFICATE_HPP

#include "dglforge/constructions.hpp"
#include "dglforge/minimal_model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace dglforge {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view tool_version = "dglforge 0.1.0";

/// Serialized in the field order below.
struct Certificate {
  std::string kind;
  std::optional<int> k;
  std::vector<std::string> generator_order;
  std::string status;
  Json witnesses = Json::object();
  Json dimensions = Json::object();
  /// Left empty unless timings are requested, so output is reproducible.
  Json timings = Json::object();

  Json to_json() const;
};

/// 64-bit FNV-1a, as 16 hex digits.
std::string digest(std::string_view text);

Json filtration_json(const Alphabet& a, const FiltrationAssignment& f);
Json word_json(const Word& w, const Alphabet& a);

Certificate lstar_certificate(const DglPresentation& p, int gen_degree, int power);
Certificate d2_certificate(const DglPresentation& p, int degree_cap, const D2Report& r);
Certificate homology_certificate(const DglPresentation& p, int degree_cap);
Certificate decomposition_certificate(const DglPresentation& p, const std::optional<FiltrationAssignment>& f);
Certificate minimal_model_certificate(const DglPresentation& input, const MinimalModel& m,
                                      const MinimalModelCheck& check, int degree_cap);
Certificate lk_certificate(const LkBundle& b);
Certificate cat_certificate(const LkBundle& b, const CatResult& r);
/// `verified` is the outcome of verify_prop51.
Certificate prop51_certificate(const LkBundle& b, const Prop51Result& r, bool control, bool verified);
Certificate claim_certificate(const LkBundle& b, const ClaimResult& r);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      failures.push_back(what);
    }
  }
};

/// Re-checks a certificate from its witnesses by substitution, derivation
/// and dot products. Kinds built from k rebuild the construction from the
/// stored f and gamma; check-d2 and decompose need the input presentation.
VerifyReport verify_certificate(const Json& cert, const DglPresentation* input = nullptr);

}  // namespace dglforge

#endif  // DGLFORGE_CERTIFICATE_HPP

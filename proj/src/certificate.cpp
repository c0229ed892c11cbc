#include "dglforge/certificate.hpp"

#include "dglforge/dgl_format.hpp"
#include "dglforge/quillen.hpp"

#include <cstdio>

namespace dglforge {

Json Certificate::to_json() const {
  Json j;
  j["kind"] = kind;
  j["k"] = k ? Json(*k) : Json(nullptr);
  j["generator_order"] = generator_order;
  j["status"] = status;
  j["witnesses"] = witnesses;
  j["dimensions"] = dimensions;
  j["timings"] = timings;
  j["tool_version"] = tool_version;
  return j;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json filtration_json(const Alphabet& a, const FiltrationAssignment& f) {
  Json j = Json::object();
  for (Letter l : a.letters()) j[a[l].name] = f.stage[l];
  return j;
}

Json word_json(const Word& w, const Alphabet& a) {
  Json j = Json::array();
  for (Letter l : w) j.push_back(a[l].name);
  return j;
}

namespace {

Certificate base(std::string kind, const DglPresentation& p, std::optional<int> k = std::nullopt) {
  Certificate c;
  c.kind = std::move(kind);
  c.k = k;
  c.generator_order = p.alphabet().names();
  c.witnesses["input_digest"] = digest(print_dgl(p));
  return c;
}

std::string str(const LieElement& e, const Alphabet& a) { return to_string(e, a); }

void put_construction(Certificate& c, const LkBundle& b) {
  const Alphabet& a = b.Lk.alphabet();
  c.witnesses["f"] = str(b.f, a);
  c.witnesses["gamma"] = str(b.gamma, a);
}

const char* verdict(bool ok) { return ok ? "VERIFIED" : "FAILED"; }

}  // namespace

Certificate lstar_certificate(const DglPresentation& p, int gen_degree, int power) {
  Certificate c = base("build-lstar", p);
  const TruncatedAlgebra A = truncated_monogenic(gen_degree, power);
  const D2Report d2 = check_d_squared(p, p.max_degree() + 1);
  c.status = verdict(d2.ok);
  Json diff = Json::object(), scale = Json::object();
  for (Letter l : p.alphabet().letters()) {
    diff[p.alphabet()[l].name] = str(p.differential(l), p.alphabet());
    scale[p.alphabet()[l].name] = format_rational(A.dual_scale[l]);
  }
  c.witnesses["algebra"] = "Q[u]/u^" + std::to_string(power) + ", |u| = " + std::to_string(gen_degree);
  c.witnesses["differentials"] = diff;
  c.witnesses["dual_scaling"] = scale;
  c.dimensions["generators"] = p.size();
  return c;
}

Certificate d2_certificate(const DglPresentation& p, int degree_cap, const D2Report& r) {
  Certificate c = base("check-d2", p);
  c.status = r.ok ? "PASS" : "FAIL";
  c.witnesses["degree_cap"] = degree_cap;
  c.witnesses["first_failure"] = r.first_failure ? Json(p.alphabet()[*r.first_failure].name) : Json(nullptr);
  c.dimensions["generators_checked"] = r.checked;
  return c;
}

Certificate homology_certificate(const DglPresentation& p, int degree_cap) {
  Certificate c = base("homology", p);
  c.status = "COMPUTED";
  Json h = Json::object();
  for (int n = 1; n <= degree_cap; ++n) h[std::to_string(n)] = homology_dimension(p, n);
  c.dimensions["homology"] = h;
  c.witnesses["degree_cap"] = degree_cap;
  return c;
}

Certificate decomposition_certificate(const DglPresentation& p, const std::optional<FiltrationAssignment>& f) {
  Certificate c = base("decompose", p);
  c.status = f ? "DECOMPOSED" : "NONE";
  if (f) {
    c.witnesses["stages"] = filtration_json(p.alphabet(), *f);
    c.dimensions["length"] = f->length();
  }
  return c;
}

Certificate minimal_model_certificate(const DglPresentation& input, const MinimalModel& m,
                                      const MinimalModelCheck& check, int degree_cap) {
  Certificate c = base("minimalize", input);
  c.status = check.ok() ? "VERIFIED" : "FAILED";
  c.witnesses["output_digest"] = digest(print_dgl(m.minimal));
  c.witnesses["output_generators"] = m.minimal.alphabet().names();
  if (m.filtration) c.witnesses["levels"] = filtration_json(m.minimal.alphabet(), *m.filtration);
  c.witnesses["decomposable"] = check.decomposable;
  c.witnesses["d_squared"] = check.d_squared;
  c.witnesses["homology_preserved"] = check.homology_preserved;
  c.witnesses["quadratic_decomposition"] = check.quadratic_decomposition;
  c.witnesses["top_stage_in_lower_levels"] = check.top_stage;
  c.dimensions["degree_cap"] = degree_cap;
  c.dimensions["input_generators"] = input.size();
  c.dimensions["output_generators"] = m.minimal.size();
  c.dimensions["input_length"] = check.input_length;
  c.dimensions["output_length"] = check.output_length;
  return c;
}

Certificate lk_certificate(const LkBundle& b) {
  Certificate c = base("build-lk", b.Lk, b.k);
  const Alphabet& a = b.Lk.alphabet();
  c.status = verdict(b.greedy.length() == b.k + 1);
  put_construction(c, b);
  c.witnesses["alpha"] = str(b.alpha, a);
  c.witnesses["alpha_hat"] = str(b.alpha_hat, a);
  c.witnesses["dv"] = str(b.Lk.differential("v"), a);
  c.witnesses["declared_stages"] = filtration_json(a, b.declared);
  c.witnesses["greedy_stages"] = filtration_json(a, b.greedy);
  c.dimensions["generators"] = b.Lk.size();
  c.dimensions["n"] = b.n;
  c.dimensions["degree_v"] = a.degree(a.at("v"));
  c.dimensions["d2_checked_through"] = 8 * b.k + 5;
  c.dimensions["declared_length"] = b.declared.length();
  c.dimensions["greedy_length"] = b.greedy.length();
  return c;
}

Certificate cat_certificate(const LkBundle& b, const CatResult& r) {
  Certificate c = base("cat-cert", b.Lk, b.k);
  const Alphabet& a = r.after.alphabet();
  const bool ok = r.identity_holds && r.greedy_after.length() <= b.k && r.greedy_before.length() == b.k + 1;
  c.status = verdict(ok);
  put_construction(c, b);
  Json subst = Json::object();
  for (const auto& [l, e] : r.substitution) subst[a[l].name] = str(e, a);
  c.witnesses["substitution"] = subst;
  c.witnesses["dv_after"] = str(r.dv_after, a);
  c.witnesses["dv_expected"] = str(r.dv_expected, a);
  c.witnesses["identity_holds"] = r.identity_holds;
  c.witnesses["stages_before"] = filtration_json(a, r.greedy_before);
  c.witnesses["stages_after"] = filtration_json(a, r.greedy_after);
  c.dimensions["degree_w"] = a.degree(a.at("w"));
  c.dimensions["length_before"] = r.greedy_before.length();
  c.dimensions["length_after"] = r.greedy_after.length();
  return c;
}

Certificate prop51_certificate(const LkBundle& b, const Prop51Result& r, bool control, bool verified) {
  Certificate c = base("check-prop51", b.Lk, b.k);
  const Alphabet& a = b.Lk.alphabet();
  c.status = r.feasible ? "FEASIBLE" : "INFEASIBLE";
  put_construction(c, b);
  c.witnesses["instance"] = control ? "control" : "dv";
  c.witnesses["rhs"] = str(r.rhs, a);
  c.witnesses["unknowns"] = "x in L^[>=2](V), v excluded, degree " + std::to_string(8 * b.k + 4);
  c.witnesses["equations"] = "coordinates of dx - rhs on words containing c or c'";
  if (r.modular_feasible) c.witnesses["modular_prepass"] = *r.modular_feasible ? "FEASIBLE" : "INFEASIBLE";
  if (r.feasible) {
    c.witnesses["x"] = str(r.witness_x, a);
  } else {
    Json y = Json::array();
    Rational dot(0);
    for (const auto& [w, q] : r.farkas) {
      y.push_back(Json::array({word_json(w, a), format_rational(q)}));
      dot += q * r.rhs.coords().coefficient(w);
    }
    c.witnesses["farkas"] = y;
    c.witnesses["farkas_dot_rhs"] = format_rational(dot);
  }
  c.witnesses["verified"] = verified;
  for (const auto& [key, v] : r.dimensions) c.dimensions[key] = v;
  return c;
}

Certificate claim_certificate(const LkBundle& b, const ClaimResult& r) {
  Certificate c = base("claim-check", b.Lk, b.k);
  const Alphabet& a = b.Lk.alphabet();
  c.status = verdict(r.remainder_in_lower && r.remainder_matches_reduced);
  put_construction(c, b);
  c.witnesses["remainder"] = str(r.remainder, a);
  c.witnesses["remainder_in_lower"] = r.remainder_in_lower;
  c.witnesses["remainder_matches_reduced"] = r.remainder_matches_reduced;
  c.witnesses["literal_in_lower"] = r.literal_in_lower;
  c.witnesses["quotient_class_nonzero"] = r.quotient_class_nonzero;
  c.dimensions["multilinear_dimension"] = r.multilinear_dimension;
  c.dimensions["multilinear_rank"] = r.multilinear_rank;
  return c;
}

// ------------------------------------------------------------ verification

namespace {

Word parse_word(const Json& j, const Alphabet& a) {
  Word w;
  for (const auto& n : j) w.push_back(a.at(n.get<std::string>()));
  return w;
}

bool stages_match(const Json& j, const Alphabet& a, const FiltrationAssignment& f) {
  return j == filtration_json(a, f);
}

void verify_k_kind(const Json& cert, VerifyReport& rep) {
  const std::string kind = cert.at("kind");
  const int k = cert.at("k");
  const Json& w = cert.at("witnesses");
  const DglPresentation L = build_connected_sum(k);
  const DglPresentation P = build_product_model(L, with_suffix(L, "'"));
  const LieElement f = parse_expression(w.at("f").get<std::string>(), L.alphabet());
  const LieElement gamma = parse_expression(w.at("gamma").get<std::string>(), P.alphabet());
  LkBundle b;
  try {
    b = assemble_Lk(k, f, gamma);
  } catch (const std::logic_error& e) {
    rep.require(false, e.what());
    return;
  }
  const Alphabet& a = b.Lk.alphabet();
  rep.require(cert.at("generator_order") == Json(a.names()), "generator order");
  rep.require(w.at("input_digest") == digest(print_dgl(b.Lk)), "input digest");
  const std::string status = cert.at("status");

  if (kind == "build-lk") {
    rep.require(stages_match(w.at("greedy_stages"), a, b.greedy), "greedy stages");
    rep.require(stages_match(w.at("declared_stages"), a, b.declared), "declared stages");
    rep.require(status == verdict(b.greedy.length() == k + 1), "status");
  } else if (kind == "cat-cert") {
    const CatResult r = cat_certificate_data(b);
    const Alphabet& ca = r.after.alphabet();
    rep.require(r.identity_holds, "dv' = gamma + (-1)^n [w, alpha']");
    for (const auto& [l, e] : r.substitution)
      rep.require(w.at("substitution").value(ca[l].name, "") == str(e, ca), "substitution of " + ca[l].name);
    rep.require(is_valid_decomposition(r.after, r.greedy_after) && stages_match(w.at("stages_after"), ca, r.greedy_after),
                "stages after substitution");
    rep.require(stages_match(w.at("stages_before"), ca, r.greedy_before), "stages before substitution");
    rep.require(status == verdict(r.identity_holds && r.greedy_after.length() <= k && r.greedy_before.length() == k + 1),
                "status");
  } else if (kind == "check-prop51") {
    Prop51Result r;
    const bool control = w.at("instance") == "control";
    if (control) {
      const LieElement X = bracket(bracket(b.Lk.generator("a"), b.Lk.generator("c")),
                                   bracket(b.Lk.generator("a'"), b.Lk.generator("c'")));
      r.rhs = extend_derivation(b.Lk, X) + b.gamma;
    } else {
      r.rhs = b.Lk.differential("v");
    }
    rep.require(w.at("rhs") == str(r.rhs, a), "right-hand side");
    r.outside = {a.at("c"), a.at("c'")};
    r.feasible = status == "FEASIBLE";
    if (r.feasible) {
      r.witness_x = parse_expression(w.at("x").get<std::string>(), a);
    } else {
      rep.require(status == "INFEASIBLE", "status");
      for (const auto& e : w.at("farkas")) r.farkas.emplace_back(parse_word(e.at(0), a), parse_rational(e.at(1).get<std::string>()));
    }
    rep.require(verify_prop51(b, r), "witness check");
  } else if (kind == "claim-check") {
    const ClaimResult r = verify_claim_identity(b);
    rep.require(w.at("remainder") == str(r.remainder, a), "remainder");
    rep.require(r.remainder_in_lower && r.remainder_matches_reduced, "remainder in L(V_{<=k-1})");
    rep.require(w.at("literal_in_lower") == r.literal_in_lower, "literal combination");
  } else {
    rep.require(false, "unknown kind " + kind);
  }
}

}  // namespace

VerifyReport verify_certificate(const Json& cert, const DglPresentation* input) {
  VerifyReport rep;
  try {
    rep.require(cert.at("tool_version") == tool_version, "tool version");
    const std::string kind = cert.at("kind");
    if (kind == "build-lk" || kind == "cat-cert" || kind == "check-prop51" || kind == "claim-check") {
      verify_k_kind(cert, rep);
    } else if (kind == "check-d2" || kind == "decompose") {
      if (!input) {
        rep.require(false, kind + " needs the input presentation");
        return rep;
      }
      const Json& w = cert.at("witnesses");
      rep.require(w.at("input_digest") == digest(print_dgl(*input)), "input digest");
      rep.require(cert.at("generator_order") == Json(input->alphabet().names()), "generator order");
      if (kind == "check-d2") {
        const D2Report r = check_d_squared(*input, w.at("degree_cap"));
        rep.require((cert.at("status") == "PASS") == r.ok, "d^2 status");
      } else if (cert.at("status") == "DECOMPOSED") {
        FiltrationAssignment f;
        for (Letter l : input->alphabet().letters()) f.stage.push_back(w.at("stages").at(input->alphabet()[l].name));
        rep.require(is_valid_decomposition(*input, f), "stages form a decomposition");
      }
    } else {
      rep.require(false, "kind " + kind + " has no verifier");
    }
  } catch (const std::exception& e) {
    rep.require(false, std::string("malformed certificate: ") + e.what());
  }
  return rep;
}

}  // namespace dglforge

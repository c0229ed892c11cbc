#include "dglforge/certificate.hpp"
#include "dglforge/dgl_format.hpp"

#include <doctest.h>

using namespace dglforge;

namespace {

const LkBundle& bundle3() {
  static const LkBundle b = build_Lk(3);
  return b;
}

}  // namespace

TEST_SUITE("certificate") {
  TEST_CASE("field order and determinism") {
    const Json j = lk_certificate(bundle3()).to_json();
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"kind", "k", "generator_order", "status", "witnesses", "dimensions", "timings",
                                           "tool_version"});
    CHECK(j.at("status") == "VERIFIED");
    CHECK(j.at("witnesses").at("f") == "1/4 [a2,a2]");
    CHECK(j.dump() == lk_certificate(build_Lk(3)).to_json().dump());
    CHECK(digest("") == "cbf29ce484222325");
  }

  TEST_CASE("k-built certificates re-verify without searches") {
    const LkBundle& b = bundle3();
    CHECK(verify_certificate(lk_certificate(b).to_json()).ok);
    CHECK(verify_certificate(cat_certificate(b, cat_certificate_data(b)).to_json()).ok);
    CHECK(verify_certificate(claim_certificate(b, verify_claim_identity(b)).to_json()).ok);
    const Prop51Result r = check_prop51(b);
    const Json p = prop51_certificate(b, r, false, verify_prop51(b, r)).to_json();
    CHECK(p.at("status") == "INFEASIBLE");
    CHECK(p.at("witnesses").at("farkas_dot_rhs") != "0");
    CHECK(verify_certificate(p).ok);
    Prop51Options o;
    o.control = true;
    const Prop51Result c = check_prop51(b, o);
    CHECK(verify_certificate(prop51_certificate(b, c, true, verify_prop51(b, c)).to_json()).ok);
  }

  TEST_CASE("tampering is detected") {
    const LkBundle& b = bundle3();
    Json j = lk_certificate(b).to_json();
    j["witnesses"]["f"] = "1/2 [a2,a2]";
    CHECK_FALSE(verify_certificate(j).ok);

    const Prop51Result r = check_prop51(b);
    Json p = prop51_certificate(b, r, false, true).to_json();
    p["witnesses"]["farkas"][0][1] = "12345";
    CHECK_FALSE(verify_certificate(p).ok);

    Json q = prop51_certificate(b, r, false, true).to_json();
    q["generator_order"][0] = "b";
    CHECK_FALSE(verify_certificate(q).ok);
  }

  TEST_CASE("input-based certificates need the input") {
    const DglPresentation p = parse_dgl("gen a 1\ngen b 3\nd b = [a,a]\n").presentation;
    const Json d2 = d2_certificate(p, 4, check_d_squared(p, 4)).to_json();
    CHECK_FALSE(verify_certificate(d2).ok);
    CHECK(verify_certificate(d2, &p).ok);
    const Json dec = decomposition_certificate(p, infer_decomposition(p)).to_json();
    CHECK(dec.at("dimensions").at("length") == 2);
    CHECK(verify_certificate(dec, &p).ok);
  }
}

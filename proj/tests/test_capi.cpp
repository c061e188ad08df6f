#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "heckelab.h"

namespace {
std::string cfg(const std::string& name) {
  return std::string(HECKELAB_CONFIG_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("workspace open / free / error paths") {
  char err[256] = {0};
  hl_workspace* ws = nullptr;
  CHECK(hl_workspace_open("/nonexistent.cfg", &ws, err, sizeof err) ==
        HL_ERR_IO);
  CHECK(std::strlen(err) > 0);
  CHECK(ws == nullptr);

  REQUIRE(hl_workspace_open(cfg("q_sqrt5_over_q.cfg").c_str(), &ws, err,
                            sizeof err) == HL_OK);
  CHECK(hl_workspace_is_extension(ws) == 1);
  CHECK(hl_class_number(ws) == 1);
  CHECK(std::string(hl_workspace_name(ws)) == "Q(sqrt5)/Q");

  // domain gate: s = 0.9 rejected
  hl_hecke_report rep{};
  CHECK(hl_verify_hecke(ws, 0.9, 0, 0, 0, &rep, err, sizeof err) ==
        HL_ERR_DOMAIN);
  hl_workspace_free(ws);
}

TEST_CASE("verify_hecke through the C ABI") {
  char err[256] = {0};
  hl_workspace* ws = nullptr;
  REQUIRE(hl_workspace_open(cfg("q_sqrt5_over_q.cfg").c_str(), &ws, err,
                            sizeof err) == HL_OK);
  hl_hecke_report rep{};
  REQUIRE(hl_verify_hecke(ws, 2.0, 0.0, 4e3, 32, &rep, err, sizeof err) ==
          HL_OK);
  CHECK(rep.pass == 1);
  CHECK(rep.rel_dev < 1e-6);
  CHECK(rep.tol > 0);
  hl_workspace_free(ws);
}

TEST_CASE("fourier / residue / limit over Q") {
  char err[256] = {0};
  hl_workspace* ws = nullptr;
  REQUIRE(hl_workspace_open(cfg("q_n2.cfg").c_str(), &ws, err, sizeof err) ==
          HL_OK);
  hl_fourier_report fr{};
  REQUIRE(hl_fourier_compare(ws, 0.0, 1.0, 1.8, 0.0, 0, 0, &fr, err,
                             sizeof err) == HL_OK);
  CHECK(fr.dev < 1e-8);
  hl_residue_report rr{};
  REQUIRE(hl_residue(ws, 0.0, 1.0, 0, &rr, err, sizeof err) == HL_OK);
  CHECK(std::abs(rr.closed - M_PI / 2) < 1e-9);  // residue of zeta(2s) E
  CHECK(rr.rel_dev < 1e-4);
  hl_limit_report lr{};
  REQUIRE(hl_limit(ws, 0.0, 1.0, 0, &lr, err, sizeof err) == HL_OK);
  CHECK(lr.rel_dev < 1e-4);
  hl_workspace_free(ws);
}

TEST_CASE("decompose_zeta per-class columns sum to the zeta_E column") {
  char err[256] = {0};
  hl_workspace* ws = nullptr;
  REQUIRE(hl_workspace_open(cfg("quartic_over_q_sqrt10.cfg").c_str(), &ws, err,
                            sizeof err) == HL_OK);
  int h = hl_class_number(ws);
  REQUIRE(h == 2);
  double cls[4], sum[2], ze[2];
  REQUIRE(hl_decompose_zeta(ws, 2.0, 0.0, 2e3, cls, sum, ze, err, sizeof err) ==
          HL_OK);
  CHECK(std::abs(cls[0] + cls[2] - sum[0]) < 1e-12 * std::abs(sum[0]));
  CHECK(std::abs(sum[0] - ze[0]) < 1e-9 * std::abs(ze[0]));
  hl_workspace_free(ws);
}

TEST_CASE("selftest") {
  char err[512] = {0};
  int fails = -1;
  CHECK(hl_selftest(&fails, err, sizeof err) == HL_OK);
  CHECK(fails == 0);
}

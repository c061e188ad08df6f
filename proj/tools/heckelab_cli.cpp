// heckelab: batch front end over the C API.
//
// Subcommands: verify-hecke, fourier-compare, residue, limit,
// decompose-zeta, selftest.  Output is CSV (default) or a JSON summary;
// numbers carry 17 significant digits so binary64 values round-trip, and
// complex values appear as (re, im) column pairs.  Identical configs give
// bit-identical output (all reductions in the core are deterministic).
//
// Exit codes: 0 all rows PASS, 1 at least one FAIL row, 2 argument or
// config error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heckelab.h"
#include "json.hpp"

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<std::string>> rows;
};

int emit(const Table& t, const std::string& format, const std::string& out) {
  std::ostringstream os;
  if (format == "csv") {
    for (size_t c = 0; c < t.cols.size(); c++)
      os << t.cols[c] << (c + 1 < t.cols.size() ? "," : "\n");
    for (const auto& r : t.rows)
      for (size_t c = 0; c < r.size(); c++)
        os << r[c] << (c + 1 < r.size() ? "," : "\n");
  } else {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json row;
      for (size_t c = 0; c < r.size(); c++) row[t.cols[c]] = r[c];
      rows.push_back(row);
    }
    os << rows.dump(2) << "\n";
  }
  if (out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(out);
    if (!f) {
      std::cerr << "heckelab: cannot write '" << out << "'\n";
      return 2;
    }
    f << os.str();
  }
  return 0;
}

struct Ctx {
  std::string ext, field, out, format = "csv";
  std::vector<double> svals = {2.0};
  double norm_bound = 0, bessel_radius = 0, tolerance = 0;
  double x = 0.0, y = 1.0;
  int nodes = 0;
};

// Open the one config this command needs; exit code 2 on any failure.
int open_ws(const Ctx& c, bool want_ext, hl_workspace** ws) {
  const std::string& path = want_ext ? c.ext : c.field;
  const char* flag = want_ext ? "--ext" : "--field";
  if (path.empty()) {
    std::cerr << "heckelab: this command requires " << flag << " <config>\n";
    return 2;
  }
  char err[512] = {0};
  if (hl_workspace_open(path.c_str(), ws, err, sizeof err) != HL_OK) {
    std::cerr << "heckelab: " << err << "\n";
    return 2;
  }
  return 0;
}

int finish(const Table& t, const Ctx& c, bool all_pass) {
  int rc = emit(t, c.format, c.out);
  if (rc) return rc;
  return all_pass ? 0 : 1;
}

int cmd_verify_hecke(const Ctx& c) {
  hl_workspace* ws = nullptr;
  if (int rc = open_ws(c, true, &ws)) return rc;
  Table t;
  t.cols = {"name",    "s_re",    "s_im", "lhs_re",  "lhs_im",
            "rhs_re",  "rhs_im",  "dev",  "rel_dev", "tol",
            "quad_err", "win_err", "status"};
  bool all = true;
  for (double s : c.svals) {
    hl_hecke_report r{};
    char err[512] = {0};
    int rc = hl_verify_hecke(ws, s, 0.0, c.norm_bound, c.nodes, &r, err,
                             sizeof err);
    if (rc != HL_OK) {
      std::cerr << "heckelab: " << err << "\n";
      hl_workspace_free(ws);
      return 2;
    }
    bool pass = r.pass && (c.tolerance <= 0 || r.rel_dev <= c.tolerance);
    all = all && pass;
    t.rows.push_back({hl_workspace_name(ws), fmt(s), fmt(0.0), fmt(r.lhs_re),
                      fmt(r.lhs_im), fmt(r.rhs_re), fmt(r.rhs_im), fmt(r.dev),
                      fmt(r.rel_dev), fmt(r.tol), fmt(r.quad_err),
                      fmt(r.win_err), pass ? "PASS" : "FAIL"});
  }
  hl_workspace_free(ws);
  return finish(t, c, all);
}

int cmd_fourier_compare(const Ctx& c) {
  hl_workspace* ws = nullptr;
  if (int rc = open_ws(c, false, &ws)) return rc;
  Table t;
  t.cols = {"name",       "x",          "y",          "s_re",
            "s_im",       "direct_re",  "direct_im",  "fourier_re",
            "fourier_im", "dev",        "direct_tail", "fourier_tail",
            "status"};
  bool all = true;
  double tol = c.tolerance > 0 ? c.tolerance : 1e-8;
  for (double s : c.svals) {
    hl_fourier_report r{};
    char err[512] = {0};
    int rc = hl_fourier_compare(ws, c.x, c.y, s, 0.0, c.norm_bound,
                                c.bessel_radius, &r, err, sizeof err);
    if (rc != HL_OK) {
      std::cerr << "heckelab: " << err << "\n";
      hl_workspace_free(ws);
      return 2;
    }
    bool pass = r.dev < tol;
    all = all && pass;
    t.rows.push_back({hl_workspace_name(ws), fmt(c.x), fmt(c.y), fmt(s),
                      fmt(0.0), fmt(r.direct_re), fmt(r.direct_im),
                      fmt(r.fourier_re), fmt(r.fourier_im), fmt(r.dev),
                      fmt(r.direct_tail), fmt(r.fourier_tail),
                      pass ? "PASS" : "FAIL"});
  }
  hl_workspace_free(ws);
  return finish(t, c, all);
}

int cmd_residue(const Ctx& c) {
  bool is_ext = !c.ext.empty();
  if (is_ext && !c.field.empty()) {
    std::cerr << "heckelab: residue takes --ext or --field, not both\n";
    return 2;
  }
  hl_workspace* ws = nullptr;
  if (int rc = open_ws(c, is_ext, &ws)) return rc;
  char err[512] = {0};
  hl_residue_report r{};
  int rc = is_ext ? hl_relative_residue(ws, c.norm_bound, &r, err, sizeof err)
                  : hl_residue(ws, c.x, c.y, c.bessel_radius, &r, err,
                               sizeof err);
  if (rc != HL_OK) {
    std::cerr << "heckelab: " << err << "\n";
    hl_workspace_free(ws);
    return 2;
  }
  double tol = c.tolerance > 0 ? c.tolerance : (is_ext ? 1e-3 : 1e-4);
  bool pass = r.rel_dev < tol;
  Table t;
  t.cols = {"name", "kind", "closed", "numeric", "rel_dev", "status"};
  t.rows.push_back({hl_workspace_name(ws), is_ext ? "relative" : "eisenstein",
                    fmt(r.closed), fmt(r.numeric), fmt(r.rel_dev),
                    pass ? "PASS" : "FAIL"});
  hl_workspace_free(ws);
  return finish(t, c, pass);
}

int cmd_limit(const Ctx& c) {
  hl_workspace* ws = nullptr;
  if (int rc = open_ws(c, false, &ws)) return rc;
  char err[512] = {0};
  hl_limit_report r{};
  if (hl_limit(ws, c.x, c.y, c.bessel_radius, &r, err, sizeof err) != HL_OK) {
    std::cerr << "heckelab: " << err << "\n";
    hl_workspace_free(ws);
    return 2;
  }
  double tol = c.tolerance > 0 ? c.tolerance : 1e-4;
  bool pass = r.rel_dev < tol;
  Table t;
  t.cols = {"name",  "x",     "y",       "value_closed", "value_numeric",
            "residue", "h_term", "hstar_term", "rel_dev",    "status"};
  t.rows.push_back({hl_workspace_name(ws), fmt(c.x), fmt(c.y),
                    fmt(r.value_closed), fmt(r.value_numeric), fmt(r.residue),
                    fmt(r.h_term), fmt(r.hstar_term), fmt(r.rel_dev),
                    pass ? "PASS" : "FAIL"});
  hl_workspace_free(ws);
  return finish(t, c, pass);
}

int cmd_decompose_zeta(const Ctx& c) {
  hl_workspace* ws = nullptr;
  if (int rc = open_ws(c, true, &ws)) return rc;
  int h = hl_class_number(ws);
  Table t;
  t.cols = {"name", "s_re", "s_im"};
  for (int i = 0; i < h; i++) {
    t.cols.push_back("class" + std::to_string(i) + "_re");
    t.cols.push_back("class" + std::to_string(i) + "_im");
  }
  for (const char* c2 : {"sum_re", "sum_im", "zeta_E_re", "zeta_E_im", "dev",
                         "status"})
    t.cols.push_back(c2);
  bool all = true;
  double tol = c.tolerance > 0 ? c.tolerance : 1e-5;
  for (double s : c.svals) {
    std::vector<double> cls(2 * h);
    double sum[2], ze[2];
    char err[512] = {0};
    if (hl_decompose_zeta(ws, s, 0.0, c.norm_bound, cls.data(), sum, ze, err,
                          sizeof err) != HL_OK) {
      std::cerr << "heckelab: " << err << "\n";
      hl_workspace_free(ws);
      return 2;
    }
    double dev = std::hypot(sum[0] - ze[0], sum[1] - ze[1]);
    bool pass = dev <= tol * std::hypot(ze[0], ze[1]);
    all = all && pass;
    std::vector<std::string> row = {hl_workspace_name(ws), fmt(s), fmt(0.0)};
    for (double v : cls) row.push_back(fmt(v));
    row.insert(row.end(), {fmt(sum[0]), fmt(sum[1]), fmt(ze[0]), fmt(ze[1]),
                           fmt(dev), pass ? "PASS" : "FAIL"});
    t.rows.push_back(row);
  }
  hl_workspace_free(ws);
  return finish(t, c, all);
}

int cmd_selftest(const Ctx& c) {
  char err[512] = {0};
  int fails = 0;
  int rc = hl_selftest(&fails, err, sizeof err);
  Table t;
  t.cols = {"suite", "failures", "status"};
  t.rows.push_back({"identity-microsuites", std::to_string(fails),
                    rc == HL_OK ? "PASS" : "FAIL"});
  if (rc != HL_OK) std::cerr << "heckelab: " << err << "\n";
  return finish(t, c, rc == HL_OK);
}

}  // namespace

int main(int argc, char** argv) {
  // HECKELAB_THREADS caps worker parallelism; the current reductions are
  // single-threaded and deterministic, so any cap is honored trivially.
  if (const char* tv = std::getenv("HECKELAB_THREADS")) {
    long cap = std::strtol(tv, nullptr, 10);
    if (cap < 1) {
      std::cerr << "heckelab: HECKELAB_THREADS must be >= 1\n";
      return 2;
    }
  }

  CLI::App app{std::string(hl_version()) +
               " - relative Hecke integral formula verification"};
  app.require_subcommand(1);
  Ctx c;

  auto add_common = [&](CLI::App* sub, bool wants_ext, bool wants_field) {
    if (wants_ext) sub->add_option("--ext", c.ext, "extension config path");
    if (wants_field) sub->add_option("--field", c.field, "field config path");
    sub->add_option("--s", c.svals, "s values (Re s > 1 where required)");
    sub->add_option("--norm-bound", c.norm_bound, "truncation bound X");
    sub->add_option("--bessel-radius", c.bessel_radius, "K-Bessel cutoff");
    sub->add_option("--nodes", c.nodes, "quadrature nodes (even)");
    sub->add_option("--out", c.out, "output file (default stdout)");
    sub->add_option("--format", c.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tolerance", c.tolerance, "PASS threshold override");
    sub->add_option("--x", c.x, "point coordinate x (default 0)");
    sub->add_option("--y", c.y, "point coordinate y (default 1)");
  };

  auto* vh = app.add_subcommand("verify-hecke",
                                "torus integral vs relative zeta identity");
  add_common(vh, true, false);
  auto* fc = app.add_subcommand("fourier-compare",
                                "direct orbit sum vs Fourier expansion");
  add_common(fc, false, true);
  auto* rs = app.add_subcommand("residue",
                                "residue at s = 1, closed form vs numeric");
  add_common(rs, true, true);
  auto* lm = app.add_subcommand("limit", "Kronecker limit formula check");
  add_common(lm, false, true);
  auto* dz = app.add_subcommand("decompose-zeta",
                                "per-class relative zeta decomposition");
  add_common(dz, true, false);
  auto* st = app.add_subcommand("selftest", "built-in identity micro-suites");
  add_common(st, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  }

  if (vh->parsed()) return cmd_verify_hecke(c);
  if (fc->parsed()) return cmd_fourier_compare(c);
  if (rs->parsed()) return cmd_residue(c);
  if (lm->parsed()) return cmd_limit(c);
  if (dz->parsed()) return cmd_decompose_zeta(c);
  if (st->parsed()) return cmd_selftest(c);
  return 2;
}

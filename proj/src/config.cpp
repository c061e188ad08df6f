#include "config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace heckelab {
namespace {

using KV = std::map<std::string, std::string>;

std::string lower(std::string s) {
  for (char& c : s) c = (char)std::tolower((unsigned char)c);
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

KV parse_kv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
  KV kv;
  std::string line, last;
  int ln = 0;
  while (std::getline(in, line)) {
    ln++;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      // continuation of the previous value (long tables)
      if (last.empty())
        throw std::runtime_error(path + ":" + std::to_string(ln) +
                                 ": expected 'key = value'");
      kv[last] += " " + line;
      continue;
    }
    std::string key = lower(trim(line.substr(0, eq)));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error(path + ":" + std::to_string(ln) +
                               ": empty key or value");
    if (kv.count(key))
      throw std::runtime_error(path + ":" + std::to_string(ln) +
                               ": duplicate key '" + key + "'");
    kv[key] = val;
    last = key;
  }
  return kv;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<Q> parse_row(const std::string& s) {
  std::istringstream is(s);
  std::vector<Q> out;
  std::string tok;
  while (is >> tok) out.push_back(q_parse(tok));
  return out;
}

std::vector<QVec> parse_rows(const std::string& s, int width,
                             const std::string& what) {
  std::vector<QVec> rows;
  for (const std::string& part : split(s, ';')) {
    QVec r = parse_row(part);
    if ((int)r.size() != width)
      throw std::runtime_error("config: " + what + ": row has " +
                               std::to_string(r.size()) + " entries, expected " +
                               std::to_string(width));
    rows.push_back(std::move(r));
  }
  return rows;
}

struct FieldBundle {
  FieldPtr k;
  std::vector<QVec> hints;
};

// Keys of the field block under the given prefix ("", "e." or "f.").
FieldBundle parse_field(const KV& kv, const std::string& pre,
                        const std::string& path) {
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(pre + key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const std::string& {
    const std::string* v = get(key);
    if (!v)
      throw std::runtime_error(path + ": missing key '" + pre + key + "'");
    return *v;
  };

  FieldBundle fb;
  std::string kind = lower(require("kind"));
  if (kind == "shorthand") {
    std::istringstream is(require("shorthand"));
    std::string which;
    is >> which;
    which = lower(which);
    if (which == "rationals") {
      fb.k = NumberField::rationals();
    } else if (which == "quadratic") {
      long D = 0;
      if (!(is >> D))
        throw std::runtime_error(path + ": 'quadratic' needs an integer D");
      fb.k = NumberField::quadratic(D);
    } else {
      throw std::runtime_error(path + ": unknown shorthand '" + which + "'");
    }
  } else if (kind == "table") {
    int d = std::stoi(require("degree"));
    if (d < 1 || d > 16)
      throw std::runtime_error(path + ": degree out of range");
    std::vector<Q> flat = parse_row(require("table"));
    if ((int)flat.size() != d * d * d)
      throw std::runtime_error(path + ": table needs " +
                               std::to_string(d * d * d) + " entries, got " +
                               std::to_string(flat.size()));
    std::vector<std::vector<QVec>> table(d, std::vector<QVec>(d, QVec(d)));
    size_t p = 0;
    for (int i = 0; i < d; i++)
      for (int j = 0; j < d; j++)
        for (int k = 0; k < d; k++) table[i][j][k] = flat[p++];
    const std::string* nm = get("name");
    fb.k = NumberField::from_table(table, nm ? *nm : "table-field");
    // Mandatory cross-checks: a corrupt table must not pass silently.
    Z disc(require("disc"));
    if (fb.k->disc != disc)
      throw std::runtime_error(path + ": disc mismatch: config " +
                               disc.get_str() + ", computed " +
                               fb.k->disc.get_str());
    QVec sig = parse_row(require("signature"));
    if (sig.size() != 2 || sig[0] != fb.k->r1 || sig[1] != fb.k->r2)
      throw std::runtime_error(path + ": signature mismatch");
  } else {
    throw std::runtime_error(path + ": kind must be shorthand or table");
  }
  if (const std::string* h = get("unit_hints"))
    for (const std::string& part : split(*h, '|'))
      fb.hints.push_back(parse_rows(part, fb.k->d, "unit_hints")[0]);
  return fb;
}

FracIdeal parse_ideal(FieldPtr k, const std::string& s,
                      const std::string& what) {
  return ideal_from_gens(k, parse_rows(s, k->d, what));
}

}  // namespace

EisensteinSeries Workspace::series() const {
  OFLattice L = is_extension
                    ? h->L
                    : of_lattice_std(F, std::vector<FracIdeal>(n, ideal_ring(F)));
  return make_eisenstein(F, uF.get(), ptF.get(), cgF.get(), lsF.get(), L, *a);
}

HeckeJob Workspace::job(double X, int nodes) const {
  if (!is_extension)
    throw std::runtime_error("config: not an extension workspace");
  HeckeJob j;
  j.ext = ext.get();
  j.uE = uE.get();
  j.uF = uF.get();
  j.rel = rel.get();
  j.h = h.get();
  j.ptF = ptF.get();
  j.cgF = cgF.get();
  j.a = *a;
  j.X = X;
  j.nodes = nodes;
  return j;
}

std::unique_ptr<Workspace> load_workspace(const std::string& path) {
  KV kv = parse_kv(path);
  auto ws = std::make_unique<Workspace>();
  ws->is_extension = kv.count("e.kind") != 0;
  if (auto it = kv.find("name"); it != kv.end()) ws->name = it->second;

  if (ws->is_extension) {
    FieldBundle be = parse_field(kv, "e.", path);
    FieldBundle bf = parse_field(kv, "f.", path);
    ws->E = be.k;
    ws->F = bf.k;
    if (!kv.count("emb") || !kv.count("w") || !kv.count("comp"))
      throw std::runtime_error(path + ": extension needs emb, w, comp");
    QMat emb = parse_rows(kv.at("emb"), be.k->d, "emb");
    if ((int)emb.size() != bf.k->d)
      throw std::runtime_error(path + ": emb needs one row per F basis vector");
    std::vector<QVec> w = parse_rows(kv.at("w"), be.k->d, "w");
    std::vector<FracIdeal> comp;
    for (const std::string& part : split(kv.at("comp"), '|'))
      comp.push_back(parse_ideal(bf.k, part, "comp"));
    ws->ext = std::make_unique<Extension>(
        make_extension(be.k, bf.k, emb, w, comp));
    ws->uE = std::make_unique<UnitGroup>(unit_group(be.k, be.hints));
    ws->uF = std::make_unique<UnitGroup>(unit_group(bf.k, bf.hints));
    ws->rel = std::make_unique<RelativeUnits>(
        relative_units(*ws->ext, *ws->uE, *ws->uF));
    ws->A = std::make_unique<FracIdeal>(
        kv.count("big_a") ? parse_ideal(be.k, kv.at("big_a"), "big_a")
                          : ideal_ring(be.k));
    ws->h = std::make_unique<HeegnerObject>(
        make_heegner(*ws->ext, ws->ext->w, *ws->A));
    ws->n = ws->ext->n;
  } else {
    FieldBundle bf = parse_field(kv, "", path);
    ws->F = bf.k;
    ws->uF = std::make_unique<UnitGroup>(unit_group(bf.k, bf.hints));
    if (auto it = kv.find("n"); it != kv.end()) ws->n = std::stoi(it->second);
    if (ws->n < 2 || ws->n > 8)
      throw std::runtime_error(path + ": n out of range [2, 8]");
  }

  ws->ptF = std::make_unique<PrimeTable>(ws->F);
  ws->cgF = std::make_unique<ClassGroup>(*ws->ptF, *ws->uF);
  if (auto it = kv.find("lseries_x"); it != kv.end())
    ws->lseries_X = std::stod(it->second);
  ws->lsF = std::make_unique<LSeries>(*ws->ptF, *ws->cgF, ws->lseries_X);
  ws->a = std::make_unique<FracIdeal>(
      kv.count("a") ? parse_ideal(ws->F, kv.at("a"), "a") : ideal_ring(ws->F));
  if (!ideal_contains(*ws->a, ws->F->one))
    throw std::runtime_error(path + ": ideal a must be anti-integral");
  return ws;
}

}  // namespace heckelab

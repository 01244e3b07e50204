#pragma once

// Line formats for instances, certificates and auxiliary digraphs.  Files
// number vertices from 1; the structs here hold them from 0.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obk::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Mode { Oberwolfach, Digraph, Graph };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Oberwolfach: return "oberwolfach";
    case Mode::Digraph: return "digraph";
    default: return "graph";
  }
}

struct FactorEntry {
  std::string id;
  std::vector<int> cycles;
};

struct Instance {
  Mode mode = Mode::Oberwolfach;
  int n = 0;
  std::vector<std::pair<int, int>> arcs;  // arcs (digraph) or edges (graph)
  std::vector<FactorEntry> factors;
  std::map<std::string, std::string> params;

  bool directed() const { return mode == Mode::Digraph; }
  int min_cycle() const { return directed() ? 2 : 3; }
};

inline const std::set<std::string>& known_params() {
  static const std::set<std::string> p{"K", "d", "s", "eta", "L", "seed", "direct_threshold"};
  return p;
}

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline long long to_int(const std::string& s, int line, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty()) throw ParseError(line, what + " must be an integer, got '" + s + "'");
  return v;
}

inline bool is_number(const std::string& s) {
  std::size_t pos = 0;
  try {
    std::stod(s, &pos);
  } catch (const std::exception&) {
    return false;
  }
  return pos == s.size();
}

// Undirected edges and arcs alike as ordered pairs; edges are normalized.
inline std::pair<int, int> key(bool directed, int u, int v) {
  return directed || u < v ? std::pair{u, v} : std::pair{v, u};
}

}  // namespace detail

inline Instance parse_instance(const std::string& text) {
  Instance in;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  bool header = false, have_mode = false, have_n = false;
  std::set<std::string> ids;
  std::set<std::pair<int, int>> seen_arcs;
  std::vector<int> factor_lines;
  while (std::getline(is, line)) {
    ++ln;
    auto t = detail::tokens(line);
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "obk" || t[1] != "v1") throw ParseError(ln, "expected header 'obk v1'");
      header = true;
      continue;
    }
    const std::string& kw = t[0];
    if (kw == "mode") {
      if (t.size() != 2) throw ParseError(ln, "mode takes one value");
      if (have_mode) throw ParseError(ln, "mode given twice");
      if (t[1] == "oberwolfach") in.mode = Mode::Oberwolfach;
      else if (t[1] == "digraph") in.mode = Mode::Digraph;
      else if (t[1] == "graph") in.mode = Mode::Graph;
      else throw ParseError(ln, "unknown mode '" + t[1] + "'");
      have_mode = true;
    } else if (kw == "n") {
      if (t.size() != 2) throw ParseError(ln, "n takes one value");
      if (have_n) throw ParseError(ln, "n given twice");
      long long n = detail::to_int(t[1], ln, "n");
      if (n < 1 || n > 1'000'000) throw ParseError(ln, "n out of range");
      in.n = static_cast<int>(n);
      have_n = true;
    } else if (kw == "arc" || kw == "edge") {
      if (!have_mode || !have_n) throw ParseError(ln, "mode and n must precede " + kw + " lines");
      if (in.mode == Mode::Oberwolfach) throw ParseError(ln, "oberwolfach mode takes no explicit host");
      if ((kw == "arc") != in.directed())
        throw ParseError(ln, std::string(kw) + " lines need mode " + (kw == "arc" ? "digraph" : "graph"));
      if (t.size() != 3) throw ParseError(ln, kw + " takes two vertices");
      long long u = detail::to_int(t[1], ln, "vertex"), v = detail::to_int(t[2], ln, "vertex");
      if (u < 1 || u > in.n || v < 1 || v > in.n) throw ParseError(ln, "vertex out of range 1..n");
      if (u == v) throw ParseError(ln, "loops are not allowed");
      int a = static_cast<int>(u) - 1, b = static_cast<int>(v) - 1;
      if (!seen_arcs.insert(detail::key(in.directed(), a, b)).second) throw ParseError(ln, "duplicate " + kw);
      in.arcs.push_back({a, b});
    } else if (kw == "factor") {
      if (!have_n) throw ParseError(ln, "n must precede factor lines");
      if (t.size() < 4 || t[2] != "cycles") throw ParseError(ln, "expected 'factor <id> cycles <l1> ...'");
      if (!ids.insert(t[1]).second) throw ParseError(ln, "factor id '" + t[1] + "' given twice");
      FactorEntry f{t[1], {}};
      long long sum = 0;
      for (std::size_t i = 3; i < t.size(); ++i) {
        long long l = detail::to_int(t[i], ln, "cycle length");
        if (l < 1 || l > in.n) throw ParseError(ln, "cycle length out of range");
        f.cycles.push_back(static_cast<int>(l));
        sum += l;
      }
      if (sum != in.n) throw ParseError(ln, "cycle lengths must sum to n");
      in.factors.push_back(std::move(f));
      factor_lines.push_back(ln);
    } else if (kw == "param") {
      if (t.size() != 3) throw ParseError(ln, "param takes a name and a value");
      if (!known_params().count(t[1])) throw ParseError(ln, "unknown param '" + t[1] + "'");
      if (!detail::is_number(t[2])) throw ParseError(ln, "param value must be numeric");
      if (in.params.count(t[1])) throw ParseError(ln, "param '" + t[1] + "' given twice");
      in.params[t[1]] = t[2];
    } else {
      throw ParseError(ln, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw ParseError(0, "empty file: expected header 'obk v1'");
  if (!have_mode) throw ParseError(0, "missing mode line");
  if (!have_n) throw ParseError(0, "missing n line");

  // Structural invariants.
  for (std::size_t i = 0; i < in.factors.size(); ++i)
    for (int l : in.factors[i].cycles)
      if (l < in.min_cycle())
        throw ParseError(factor_lines[i], std::string(in.directed() ? "directed" : "undirected") +
                                           " cycles must have length at least " + std::to_string(in.min_cycle()));
  int m = static_cast<int>(in.factors.size());
  if (in.mode == Mode::Oberwolfach) {
    if (in.n % 2 == 0) throw ParseError(0, "oberwolfach mode needs odd n");
    if (m != (in.n - 1) / 2) throw ParseError(0, "oberwolfach mode needs (n-1)/2 factors");
  } else {
    std::vector<int> out(in.n, 0), inn(in.n, 0);
    for (auto [u, v] : in.arcs) {
      ++out[u];
      ++inn[v];
      if (!in.directed()) {
        ++out[v];
        ++inn[u];
      }
    }
    int r = in.n ? out[0] : 0;
    for (int v = 0; v < in.n; ++v)
      if (out[v] != r || inn[v] != r) throw ParseError(0, "host is not regular");
    int per = in.directed() ? 1 : 2;
    if (m * per != r)
      throw ParseError(0, std::string("factor count must equal the host ") +
                              (in.directed() ? "regularity" : "degree divided by 2"));
  }
  return in;
}

inline std::string emit_instance(const Instance& in) {
  std::ostringstream os;
  os << "obk v1\nmode " << mode_name(in.mode) << "\nn " << in.n << "\n";
  const char* kw = in.directed() ? "arc" : "edge";
  for (auto [u, v] : in.arcs) os << kw << " " << u + 1 << " " << v + 1 << "\n";
  for (const auto& f : in.factors) {
    os << "factor " << f.id << " cycles";
    for (int l : f.cycles) os << " " << l;
    os << "\n";
  }
  for (const auto& [k, v] : in.params) os << "param " << k << " " << v << "\n";
  return os.str();
}

inline std::string normalize_instance(const std::string& text) { return emit_instance(parse_instance(text)); }

// ---------------------------------------------------------------------------
// Certificates.

struct CertFactor {
  std::string id;
  std::vector<std::vector<int>> cycles;
};

struct CertificateFile {
  std::vector<CertFactor> factors;
};

inline CertificateFile parse_certificate(const std::string& text) {
  CertificateFile c;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++ln;
    auto t = detail::tokens(line);
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "obk-cert" || t[1] != "v1") throw ParseError(ln, "expected header 'obk-cert v1'");
      header = true;
      continue;
    }
    if (t[0] == "factor") {
      if (t.size() != 2) throw ParseError(ln, "expected 'factor <id>'");
      c.factors.push_back({t[1], {}});
    } else if (t[0] == "cycle") {
      if (c.factors.empty()) throw ParseError(ln, "cycle line before any factor line");
      if (t.size() < 2) throw ParseError(ln, "empty cycle");
      std::vector<int> cyc;
      for (std::size_t i = 1; i < t.size(); ++i) {
        long long v = detail::to_int(t[i], ln, "vertex");
        if (v < 1 || v > 1'000'000) throw ParseError(ln, "vertex out of range");
        cyc.push_back(static_cast<int>(v) - 1);
      }
      c.factors.back().cycles.push_back(std::move(cyc));
    } else {
      throw ParseError(ln, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(0, "empty file: expected header 'obk-cert v1'");
  return c;
}

inline std::string emit_certificate(const CertificateFile& c) {
  std::ostringstream os;
  os << "obk-cert v1\n";
  for (const auto& f : c.factors) {
    os << "factor " << f.id << "\n";
    for (const auto& cyc : f.cycles) {
      os << "cycle";
      for (int v : cyc) os << " " << v + 1;
      os << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Auxiliary digraphs: `obk-aux v1`, `nv`, `nw`, `template plain|special <c>`
// lines and `arc <u> <v> <colour>` lines; hubs are nv+1..nv+nw and colours are
// 0, K or an integer >= 3.

struct AuxArcEntry {
  int u, v, colour;  // colour: 0, 1 for K, or >= 3
};

struct AuxFile {
  int nv = 0, nw = 0;
  std::vector<std::pair<bool, int>> templates;  // (special, c)
  std::vector<AuxArcEntry> arcs;
};

inline AuxFile parse_aux(const std::string& text) {
  AuxFile a;
  std::istringstream is(text);
  std::string line;
  int ln = 0;
  bool header = false, have_nv = false, have_nw = false;
  while (std::getline(is, line)) {
    ++ln;
    auto t = detail::tokens(line);
    if (t.empty()) continue;
    if (!header) {
      if (t.size() != 2 || t[0] != "obk-aux" || t[1] != "v1") throw ParseError(ln, "expected header 'obk-aux v1'");
      header = true;
      continue;
    }
    if (t[0] == "nv" || t[0] == "nw") {
      if (t.size() != 2) throw ParseError(ln, t[0] + " takes one value");
      long long v = detail::to_int(t[1], ln, t[0]);
      if (v < 0 || v > 1'000'000) throw ParseError(ln, t[0] + " out of range");
      (t[0] == "nv" ? a.nv : a.nw) = static_cast<int>(v);
      (t[0] == "nv" ? have_nv : have_nw) = true;
    } else if (t[0] == "template") {
      if (t.size() != 3 || (t[1] != "plain" && t[1] != "special"))
        throw ParseError(ln, "expected 'template plain|special <c>'");
      long long c = detail::to_int(t[2], ln, "template length");
      if (c < 3 || c > 64) throw ParseError(ln, "template length out of range");
      a.templates.push_back({t[1] == "special", static_cast<int>(c)});
    } else if (t[0] == "arc") {
      if (!have_nv || !have_nw) throw ParseError(ln, "nv and nw must precede arc lines");
      if (t.size() != 4) throw ParseError(ln, "expected 'arc <u> <v> <colour>'");
      long long u = detail::to_int(t[1], ln, "vertex"), v = detail::to_int(t[2], ln, "vertex");
      long long tot = static_cast<long long>(a.nv) + a.nw;
      if (u < 1 || u > tot || v < 1 || v > tot) throw ParseError(ln, "vertex out of range");
      int col;
      if (t[3] == "K") {
        col = 1;
      } else {
        long long c = detail::to_int(t[3], ln, "colour");
        if (c != 0 && c < 3) throw ParseError(ln, "colour must be 0, K or at least 3");
        col = static_cast<int>(c);
      }
      a.arcs.push_back({static_cast<int>(u) - 1, static_cast<int>(v) - 1, col});
    } else {
      throw ParseError(ln, "unknown keyword '" + t[0] + "'");
    }
  }
  if (!header) throw ParseError(0, "empty file: expected header 'obk-aux v1'");
  if (!have_nv || !have_nw) throw ParseError(0, "missing nv or nw line");
  if (a.templates.empty()) throw ParseError(0, "at least one template line is required");
  return a;
}

}  // namespace obk::io

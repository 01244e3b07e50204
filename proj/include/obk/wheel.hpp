#pragma once

// Coloured wheels, the auxiliary digraph J on V u W, the twisting bijection
// between colour-K arcs and host arcs, and closed-form divisibility checks.

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "obk/cyclic.hpp"
#include "obk/digraph.hpp"

namespace obk {

// Colour codes.  0 is uncoloured, kColourK the special colour, and a plain
// wheel W_c uses colour c >= 3 on its coloured spoke.  kPrime marks the
// renamed spoke colours 0', K', c' of the functional encoding.
constexpr int kColour0 = 0;
constexpr int kColourK = 1;
constexpr int kPrime = 256;

inline std::string colour_name(int col) {
  std::string p = (col & kPrime) ? "'" : "";
  int b = col & ~kPrime;
  if (b == kColour0) return "0" + p;
  if (b == kColourK) return "K" + p;
  return std::to_string(b) + p;
}

struct ColouredArc {
  int u = 0;
  int v = 0;
  int colour = kColour0;
  friend bool operator==(const ColouredArc& a, const ColouredArc& b) {
    return a.u == b.u && a.v == b.v && a.colour == b.colour;
  }
  friend bool operator<(const ColouredArc& a, const ColouredArc& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.colour < b.colour;
  }
};

// J on V = {0..nv-1} (identified with cyclic positions) and W = {nv..nv+nw-1}.
// Arcs form a multiset.
class AuxiliaryDigraph {
 public:
  AuxiliaryDigraph() = default;
  AuxiliaryDigraph(int nv, int nw) : nv_(nv), nw_(nw) {}

  int nv() const { return nv_; }
  int nw() const { return nw_; }
  int size() const { return nv_ + nw_; }
  bool is_hub(int x) const { return x >= nv_; }
  int hub(int w) const { return nv_ + w; }

  void add(int u, int v, int colour) {
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw std::out_of_range("AuxiliaryDigraph: vertex out of range");
    if (u == v) throw std::invalid_argument("AuxiliaryDigraph: loops are not allowed");
    arcs_.push_back({u, v, colour});
  }
  void add(const ColouredArc& a) { add(a.u, a.v, a.colour); }

  // Removes one copy; returns false if absent.
  bool remove(const ColouredArc& a) {
    auto it = std::find(arcs_.begin(), arcs_.end(), a);
    if (it == arcs_.end()) return false;
    *it = arcs_.back();
    arcs_.pop_back();
    return true;
  }

  const std::vector<ColouredArc>& arcs() const { return arcs_; }
  std::vector<ColouredArc>& mutable_arcs() { return arcs_; }
  std::size_t num_arcs() const { return arcs_.size(); }

  std::vector<ColouredArc> sorted_arcs() const {
    auto a = arcs_;
    std::sort(a.begin(), a.end());
    return a;
  }

 private:
  int nv_ = 0, nw_ = 0;
  std::vector<ColouredArc> arcs_;
};

// Per-vertex degree counts split by colour and by the side of the other end.
struct AuxDegrees {
  // [v][colour] maps; colour keys are unprimed.
  std::vector<std::map<int, int>> out_v, in_v, out_w, in_hub;
  std::vector<int> out_v_total, in_v_total, out_w_total, in_hub_total;

  explicit AuxDegrees(const AuxiliaryDigraph& j) {
    int n = j.size();
    out_v.resize(n);
    in_v.resize(n);
    out_w.resize(n);
    in_hub.resize(n);
    out_v_total.assign(n, 0);
    in_v_total.assign(n, 0);
    out_w_total.assign(n, 0);
    in_hub_total.assign(n, 0);
    for (const auto& a : j.arcs()) {
      if (!j.is_hub(a.u) && !j.is_hub(a.v)) {
        ++out_v[a.u][a.colour];
        ++in_v[a.v][a.colour];
        ++out_v_total[a.u];
        ++in_v_total[a.v];
      } else if (!j.is_hub(a.u) && j.is_hub(a.v)) {
        ++out_w[a.u][a.colour];
        ++in_hub[a.v][a.colour];
        ++out_w_total[a.u];
        ++in_hub_total[a.v];
      }
    }
  }
  static int get(const std::map<int, int>& m, int c) {
    auto it = m.find(c);
    return it == m.end() ? 0 : it->second;
  }
};

// ---------------------------------------------------------------------------
// Wheel templates and copies.  Template vertices: rim 0..c-1 in cyclic order,
// hub c.  The coloured rim arc (Special) is (c-2 -> c-1); the coloured spoke
// leaves rim vertex c-1.

enum class WheelKind { Plain, Special };

struct WheelTemplate {
  int c = 3;
  WheelKind kind = WheelKind::Plain;

  static WheelTemplate plain(int c) { return {c, WheelKind::Plain}; }
  static WheelTemplate special(int c = 8) { return {c, WheelKind::Special}; }

  int spoke_colour() const { return kind == WheelKind::Plain ? c : kColourK; }

  // Arcs on template vertices with unprimed colours.
  std::vector<ColouredArc> arcs() const {
    if (c < 3) throw std::invalid_argument("WheelTemplate: rim length must be at least 3");
    std::vector<ColouredArc> a;
    for (int i = 0; i < c; ++i) {
      int col = (kind == WheelKind::Special && i == c - 2) ? kColourK : kColour0;
      a.push_back({i, (i + 1) % c, col});
    }
    for (int i = 0; i < c; ++i) a.push_back({i, c, i == c - 1 ? spoke_colour() : kColour0});
    return a;
  }

  std::string name() const {
    return (kind == WheelKind::Plain ? "W" : "WK") + std::to_string(c);
  }

  friend bool operator==(const WheelTemplate& a, const WheelTemplate& b) { return a.c == b.c && a.kind == b.kind; }
};

struct WheelCopy {
  WheelTemplate tmpl;
  std::vector<int> rim;  // images of rim vertices 0..c-1
  int hub = 0;           // vertex id in J

  std::vector<ColouredArc> arcs() const {
    std::vector<ColouredArc> out;
    for (const auto& a : tmpl.arcs()) {
      int u = rim[a.u];
      int v = a.v == tmpl.c ? hub : rim[a.v];
      out.push_back({u, v, a.colour});
    }
    return out;
  }
};

inline AuxiliaryDigraph union_of_wheels(int nv, int nw, const std::vector<WheelCopy>& ws) {
  AuxiliaryDigraph j(nv, nw);
  for (const auto& w : ws)
    for (const auto& a : w.arcs()) j.add(a);
  return j;
}

// ---------------------------------------------------------------------------
// Twisting.  A colour-K arc (x, y) of J comes from the host arc (x, y^+).

class TwistError : public std::invalid_argument {
 public:
  explicit TwistError(const std::string& w) : std::invalid_argument(w) {}
};

inline ColouredArc twist_encode(const Arc& host, int colour, const CyclicOrder& order) {
  if (host.u == host.v) throw TwistError("twist_encode: host arc is a loop");
  if (colour == kColour0) return {host.u, host.v, kColour0};
  if (colour != kColourK) throw TwistError("twist_encode: colour must be 0 or K");
  int y = order.vertex_at(order.pred(order.position(host.v)));
  if (y == host.u) throw TwistError("twist_encode: arc (z, z+) cannot take colour K");
  return {host.u, y, kColourK};
}

inline Arc twist_decode_arc(const ColouredArc& a, const CyclicOrder& order) {
  if (a.colour == kColour0) return {a.u, a.v};
  if (a.colour != kColourK) throw TwistError("twist_decode_arc: colour must be 0 or K");
  return {a.u, order.vertex_at(order.succ(order.position(a.v)))};
}

// A directed cycle of J: verts[i] -> verts[i+1] has colour colours[i].
struct ColouredCycle {
  std::vector<int> verts;
  std::vector<int> colours;
};

struct HostPath {
  std::vector<int> verts;
  int num_arcs() const { return static_cast<int>(verts.size()) - 1; }
};

// Rotates a cycle so that its unique K-arc is the last rim arc x_{c-1} -> x_c
// (the closing arc x_c -> x_1 is then colour 0).
inline std::vector<int> normalize_k_cycle(const ColouredCycle& cyc, int index) {
  int c = static_cast<int>(cyc.verts.size());
  if (c < 3 || static_cast<int>(cyc.colours.size()) != c)
    throw TwistError("twist_decode: cycle " + std::to_string(index) + " is malformed");
  int kpos = -1, kcount = 0;
  for (int i = 0; i < c; ++i) {
    if (cyc.colours[i] == kColourK) {
      kpos = i;
      ++kcount;
    } else if (cyc.colours[i] != kColour0) {
      throw TwistError("twist_decode: cycle " + std::to_string(index) + " has a foreign colour");
    }
  }
  if (kcount != 1) throw TwistError("twist_decode: cycle " + std::to_string(index) + " lacks exactly one K-arc");
  std::vector<int> x(c);
  // K-arc is verts[kpos] -> verts[kpos+1]; it must become x[c-2] -> x[c-1].
  for (int i = 0; i < c; ++i) x[i] = cyc.verts[(kpos + 2 + i) % c];
  return x;
}

struct CompatibilityError : TwistError {
  int first, second;
  CompatibilityError(const std::string& w, int a, int b) : TwistError(w), first(a), second(b) {}
};

// Decodes a compatible family into host paths, one per maximal cyclic
// interval (in position order) of the set of cycle endpoints x_c.
inline std::vector<HostPath> twist_decode(const std::vector<ColouredCycle>& family, const CyclicOrder& order) {
  int n = order.n();
  std::vector<std::vector<int>> xs;
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < family.size(); ++i) {
    xs.push_back(normalize_k_cycle(family[i], static_cast<int>(i)));
    for (int v : xs.back()) {
      if (v < 0 || v >= n) throw TwistError("twist_decode: vertex out of range");
      if (owner[v] != -1)
        throw CompatibilityError("twist_decode: cycles " + std::to_string(owner[v]) + " and " + std::to_string(i) +
                                     " share a vertex",
                                 owner[v], static_cast<int>(i));
      owner[v] = static_cast<int>(i);
    }
  }
  // end_at[p] = cycle whose endpoint x_c sits at position p.
  std::vector<int> end_at(n, -1);
  for (std::size_t i = 0; i < xs.size(); ++i) end_at[order.position(xs[i].back())] = static_cast<int>(i);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int succ = order.vertex_at(order.succ(order.position(xs[i].back())));
    int o = owner[succ];
    if (o != -1 && end_at[order.position(succ)] == -1)
      throw CompatibilityError("twist_decode: successor of the endpoint of cycle " + std::to_string(i) +
                                   " is an interior vertex of cycle " + std::to_string(o),
                               static_cast<int>(i), o);
  }
  if (xs.empty()) return {};
  if (static_cast<int>(xs.size()) == n) throw TwistError("twist_decode: endpoints cover the whole cyclic order");
  std::vector<HostPath> paths;
  for (int p = 0; p < n; ++p) {
    if (end_at[p] == -1 || end_at[pred_pos(n, p)] != -1) continue;
    HostPath path;
    path.verts.push_back(order.vertex_at(p));
    for (int q = p; end_at[q] != -1; q = succ_pos(n, q)) {
      const auto& x = xs[end_at[q]];
      int c = static_cast<int>(x.size());
      for (int i = 0; i < c - 1; ++i) path.verts.push_back(x[i]);
      path.verts.push_back(order.vertex_at(succ_pos(n, q)));
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

// Inverse of twist_decode: each host path whose length is a multiple of c
// becomes its c-arc segments, each encoded as a coloured c-cycle.
inline std::vector<ColouredCycle> twist_encode_paths(const std::vector<HostPath>& paths, int c,
                                                     const CyclicOrder& order) {
  std::vector<ColouredCycle> out;
  for (const auto& p : paths) {
    if (p.num_arcs() % c != 0 || p.num_arcs() == 0) throw TwistError("twist_encode_paths: path length not a multiple of c");
    for (int s = 0; s < p.num_arcs(); s += c) {
      int x = p.verts[s];
      int end = p.verts[s + c];
      if (end != order.vertex_at(order.succ(order.position(x))))
        throw TwistError("twist_encode_paths: segment does not end at the successor of its start");
      ColouredCycle cyc;
      for (int i = 1; i < c; ++i) cyc.verts.push_back(p.verts[s + i]);
      cyc.verts.push_back(x);
      // Arcs x_1 -> ... -> x_{c-1} colour 0, x_{c-1} -> x_c colour K, x_c -> x_1 colour 0.
      cyc.colours.assign(c, kColour0);
      ColouredArc k = twist_encode({p.verts[s + c - 1], end}, kColourK, order);
      if (k.v != x) throw TwistError("twist_encode_paths: inconsistent twist");
      cyc.colours[c - 2] = kColourK;
      out.push_back(std::move(cyc));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Path factor problems: per hub, disjoint non-consecutive intervals
// [x_i, y_i^-] of length ell_i / 8 and a forbidden set Z_w.

struct PathFactorProblem {
  int n = 0;
  std::vector<std::vector<Interval>> intervals;  // per hub
  std::vector<std::vector<int>> forbidden;       // Z_w per hub

  // Empty string when valid.
  std::string validate() const {
    for (std::size_t w = 0; w < intervals.size(); ++w) {
      std::vector<int> mark(n, 0);
      for (const auto& iv : intervals[w]) {
        if (iv.length <= 0) return "hub " + std::to_string(w) + ": empty interval";
        for (int t = 0; t < iv.length; ++t) {
          int v = (iv.start + t) % n;
          if (mark[v]) return "hub " + std::to_string(w) + ": intervals overlap";
          mark[v] = 1;
        }
      }
      for (const auto& iv : intervals[w]) {
        int succ = interval_successor(n, iv);
        if (mark[succ]) return "hub " + std::to_string(w) + ": interval successor inside an interval";
      }
    }
    return {};
  }
};

// ---------------------------------------------------------------------------
// Closed-form divisibility.

struct DivisibilityViolation {
  std::string kind;  // shape, foreign_colour, vertex_balance, vertex_k_balance, hub
  int vertex = -1;
  long long lhs = 0, rhs = 0;
  std::string detail;
};

struct DivisibilityReport {
  bool ok = true;
  std::vector<DivisibilityViolation> violations;
  std::string summary() const {
    std::ostringstream os;
    for (const auto& v : violations)
      os << v.kind << " at " << v.vertex << ": " << v.lhs << " != " << v.rhs << (v.detail.empty() ? "" : " (") << v.detail
         << (v.detail.empty() ? "" : ")") << "\n";
    return os.str();
  }
};

// Conditions for decomposing J into copies of the given templates (any mix).
// For a single template these are exactly the published necessary
// conditions; a mix adds the colour classes and sums the hub identities.
inline DivisibilityReport divisibility_closed_form(const AuxiliaryDigraph& j, const std::vector<WheelTemplate>& ts) {
  DivisibilityReport rep;
  auto bad = [&](std::string kind, int v, long long l, long long r, std::string det = {}) {
    rep.ok = false;
    rep.violations.push_back({std::move(kind), v, l, r, std::move(det)});
  };
  bool special = false;
  int special_c = 0;
  std::set<int> plain;
  for (const auto& t : ts) {
    if (t.kind == WheelKind::Special) {
      if (special && special_c != t.c) throw std::invalid_argument("divisibility: at most one special rim length");
      special = true;
      special_c = t.c;
    } else {
      plain.insert(t.c);
    }
  }
  std::set<int> rim_ok{kColour0}, spoke_ok{kColour0};
  if (special) {
    rim_ok.insert(kColourK);
    spoke_ok.insert(kColourK);
  }
  for (int c : plain) spoke_ok.insert(c);
  for (std::size_t i = 0; i < j.arcs().size(); ++i) {
    const auto& a = j.arcs()[i];
    bool hu = j.is_hub(a.u), hv = j.is_hub(a.v);
    if (hu && hv) bad("shape", a.u, 0, 0, "arc inside W");
    else if (hu) bad("shape", a.u, 0, 0, "arc from W to V");
    else if (!hv && !rim_ok.count(a.colour)) bad("foreign_colour", a.u, a.colour, 0, "J[V] arc of colour " + colour_name(a.colour));
    else if (hv && !spoke_ok.count(a.colour))
      bad("foreign_colour", a.u, a.colour, 0, "J[V,W] arc of colour " + colour_name(a.colour));
  }
  AuxDegrees deg(j);
  for (int v = 0; v < j.nv(); ++v) {
    int in = deg.in_v_total[v], out = deg.out_v_total[v], sp = deg.out_w_total[v];
    if (in != out) bad("vertex_balance", v, in, out, "d-(v,V) vs d+(v,V)");
    if (out != sp) bad("vertex_balance", v, out, sp, "d+(v,V) vs d+(v,W)");
    if (special) {
      int kin = AuxDegrees::get(deg.in_v[v], kColourK), kout = AuxDegrees::get(deg.out_w[v], kColourK);
      if (kin != kout) bad("vertex_k_balance", v, kin, kout, "d-_K(v,V) vs d+_K(v,W)");
    }
  }
  for (int w = j.nv(); w < j.size(); ++w) {
    long long need = 0;
    for (int c : plain) need += static_cast<long long>(c) * AuxDegrees::get(deg.in_hub[w], c);
    if (special) need += static_cast<long long>(special_c) * AuxDegrees::get(deg.in_hub[w], kColourK);
    if (deg.in_hub_total[w] != need) bad("hub", w, deg.in_hub_total[w], need, "d-(w) vs sum of c d-_c(w)");
  }
  return rep;
}

inline DivisibilityReport divisibility_closed_form(const AuxiliaryDigraph& j, int c, WheelKind kind) {
  return divisibility_closed_form(j, std::vector<WheelTemplate>{{c, kind}});
}

}  // namespace obk

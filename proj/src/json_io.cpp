#include "qhyp/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace qhyp {

Json to_json(const Quaternion& q) { return Json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 4) throw MalformedInput("quaternion must be a 4-array [a0,a1,a2,a3]");
  for (const auto& c : j)
    if (!c.is_number()) throw MalformedInput("quaternion components must be numbers");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

Json to_json(const HVector& v) {
  Json a = Json::array();
  for (size_t k = 0; k < v.size(); ++k) a.push_back(to_json(v[k]));
  return a;
}

HVector hvector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw MalformedInput("vector must be a non-empty array of quaternions");
  HVector v(j.size());
  for (size_t k = 0; k < j.size(); ++k) v[k] = quaternion_from_json(j[k]);
  return v;
}

Json to_json(const HMatrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return Json{{"n", static_cast<int>(m.rows()) - 1}, {"rows", rows}};
}

HMatrix hmatrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows")) throw MalformedInput("matrix must be an object with \"rows\"");
  const auto& rows = j["rows"];
  if (!rows.is_array() || rows.empty()) throw MalformedInput("\"rows\" must be a non-empty array");
  const size_t N = rows.size();
  if (j.contains("n") && (!j["n"].is_number_integer() || j["n"].get<int>() + 1 != static_cast<int>(N)))
    throw MalformedInput("\"n\" does not match the number of rows");
  HMatrix m(N, N);
  for (size_t r = 0; r < N; ++r) {
    if (!rows[r].is_array() || rows[r].size() != N) throw MalformedInput("matrix must be square");
    for (size_t c = 0; c < N; ++c) m(r, c) = quaternion_from_json(rows[r][c]);
  }
  return m;
}

Json to_json(const EigenData& e) {
  Json classes = Json::array();
  for (const auto& c : e.classes) {
    Json signs = Json::array();
    for (int s : c.signs) signs.push_back(s);
    Json vectors = Json::array();
    for (const auto& v : c.vectors) vectors.push_back(to_json(v));
    classes.push_back(Json{{"representative", Json::array({c.rep.real(), c.rep.imag()})},
                           {"modulus", std::abs(c.rep)},
                           {"angle", std::arg(c.rep)},
                           {"multiplicity", c.multiplicity},
                           {"type", to_string(c.type)},
                           {"signs", signs},
                           {"eigenvectors", vectors}});
  }
  return classes;
}

Json classify_report(const Isometry& a) {
  Json j;
  std::string type = to_string(a.classification());
  j["type"] = type;
  j["real_trace"] = a.real_trace();
  j["semisimple"] = a.semisimple();
  if (a.semisimple()) j["classes"] = to_json(a.eigen());
  else j["note"] = "not supported downstream";
  return j;
}

Json to_json(const PointConfig& c) {
  Json pts = Json::array();
  for (const auto& p : c.lifts) pts.push_back(to_json(p));
  return Json{{"n", c.space.n}, {"i", c.i}, {"points", pts}};
}

PointConfig config_from_json(const Json& j, double tol) {
  if (!j.is_object() || !j.contains("n") || !j.contains("points"))
    throw MalformedInput("configuration must have \"n\" and \"points\"");
  if (!j["n"].is_number_integer() || j["n"].get<int>() < 1) throw MalformedInput("\"n\" must be a positive integer");
  auto space = HermitianSpace::corner(j["n"].get<int>());
  std::vector<HVector> lifts;
  if (!j["points"].is_array()) throw MalformedInput("\"points\" must be an array");
  for (const auto& p : j["points"]) {
    HVector v = hvector_from_json(p);
    if (v.size() != space.dim()) throw MalformedInput("point dimension does not match n+1");
    lifts.push_back(v);
  }
  PointConfig c;
  try {
    c = gram_of(space, lifts, tol);
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  }
  if (j.contains("i") && (!j["i"].is_number_integer() || j["i"].get<int>() != c.i))
    throw MalformedInput("\"i\" does not match the number of leading null points");
  return c;
}

Json to_json(const SemiNormalizedGram& g) {
  Json vg = Json::array();
  for (size_t k = 0; k < g.vg.size(); ++k)
    vg.push_back(Json{{"index", Json::array({g.vg_index[k].first, g.vg_index[k].second})}, {"value", to_json(g.vg[k])}});
  Json rows = Json::array();
  for (size_t r = 0; r < g.gram.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < g.gram.cols(); ++c) row.push_back(to_json(g.gram(r, c)));
    rows.push_back(row);
  }
  return Json{{"m", g.m}, {"i", g.i}, {"gram", rows}, {"vg", vg}};
}

namespace {

const char* kind_name(SlotKind k) {
  switch (k) {
    case SlotKind::X1: return "X1j";
    case SlotKind::X2: return "X2j";
    case SlotKind::X3: return "X3j";
    case SlotKind::Xk: return "Xkj";
  }
  return "?";
}

SlotKind kind_from(const std::string& s) {
  if (s == "X1j") return SlotKind::X1;
  if (s == "X2j") return SlotKind::X2;
  if (s == "X3j") return SlotKind::X3;
  if (s == "Xkj") return SlotKind::Xk;
  throw MalformedInput("unknown cross-ratio slot kind " + s);
}

}  // namespace

Json to_json(const InvariantProfile& p) {
  Json j;
  j["n"] = p.n;
  j["m"] = p.m;
  j["i"] = p.i;
  j["u0"] = to_json(p.u0);
  j["A23"] = p.A23;
  Json xs = Json::array();
  for (const auto& s : p.cross_ratios)
    xs.push_back(Json{{"kind", kind_name(s.kind)},
                      {"k", s.k},
                      {"j", s.j},
                      {"points", Json::array({s.points[0], s.points[1], s.points[2], s.points[3]})},
                      {"value", to_json(s.value)}});
  j["cross_ratios"] = xs;
  Json rs = Json::array();
  for (const auto& r : p.radial) rs.push_back(Json{{"j", r.j}, {"value", r.value}});
  j["radial"] = rs;
  Json ps = Json::array();
  for (const auto& s : p.pairs)
    ps.push_back(Json{{"a", s.a}, {"b", s.b}, {"d", s.d}, {"A", s.A}, {"u", to_json(s.u)}});
  j["pairs"] = ps;
  Json counts;
  counts["d"] = p.d();
  counts["d_formula"] = InvariantProfile::d_formula(p.m, p.i);
  counts["t"] = p.t();
  counts["t_formula"] = InvariantProfile::t_formula(p.m, p.i, p.l());
  counts["l"] = p.l();
  j["counts"] = counts;
  return j;
}

InvariantProfile profile_from_json(const Json& j) {
  try {
    InvariantProfile p;
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    p.i = j.at("i").get<int>();
    p.u0 = quaternion_from_json(j.at("u0"));
    p.A23 = j.at("A23").get<double>();
    for (const auto& s : j.at("cross_ratios")) {
      CrossRatioSlot c;
      c.kind = kind_from(s.at("kind").get<std::string>());
      c.k = s.at("k").get<int>();
      c.j = s.at("j").get<int>();
      for (int a = 0; a < 4; ++a) c.points[a] = s.at("points").at(a).get<int>();
      c.value = quaternion_from_json(s.at("value"));
      p.cross_ratios.push_back(c);
    }
    for (const auto& r : j.at("radial")) p.radial.push_back({r.at("j").get<int>(), r.at("value").get<double>()});
    for (const auto& s : j.at("pairs")) {
      PairSlot q;
      q.a = s.at("a").get<int>();
      q.b = s.at("b").get<int>();
      q.d = s.at("d").get<double>();
      q.A = s.at("A").get<double>();
      q.u = quaternion_from_json(s.at("u"));
      p.pairs.push_back(q);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("profile: ") + e.what());
  }
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string profile_csv(const InvariantProfile& p) {
  std::ostringstream out;
  out << "slot,a,b,c,d,scalar,value.w,value.x,value.y,value.z\n";
  auto row = [&](const std::string& slot, std::array<int, 4> idx, const std::string& scalar, const Quaternion* q) {
    out << slot;
    for (int v : idx) out << ',' << (v ? std::to_string(v) : "");
    out << ',' << scalar;
    if (q) out << ',' << num(q->w) << ',' << num(q->x) << ',' << num(q->y) << ',' << num(q->z);
    else out << ",,,,";
    out << '\n';
  };
  row("u0", {2, 3, 0, 0}, "", &p.u0);
  row("A23", {1, 2, 3, 0}, num(p.A23), nullptr);
  for (const auto& s : p.cross_ratios) row(s.label(), s.points, "", &s.value);
  for (const auto& r : p.radial) row("rho", {1, r.j, 0, 0}, num(r.value), nullptr);
  for (const auto& s : p.pairs) {
    row("d", {s.a, s.b, 0, 0}, num(s.d), nullptr);
    row("A", {1, s.a, s.b, 0}, num(s.A), nullptr);
    row("u", {s.a, s.b, 0, 0}, "", &s.u);
  }
  return out.str();
}

Json to_json(const Decision& d) {
  Json j;
  j["verdict"] = to_string(d.verdict);
  if (d.failed != FailedInvariant::None) j["failed_invariant"] = to_string(d.failed);
  if (!d.reason.empty()) j["reason"] = d.reason;
  j["witness"] = d.witness ? to_json(*d.witness) : Json(nullptr);
  j["residual"] = d.residual;
  j["membership_error"] = d.membership_error;
  return j;
}

}  // namespace qhyp

#include "symhom/interchange.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace symhom::interchange {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

BigInt parse_bigint(const std::string& raw) {
  std::string s = trim(raw);
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty())
    throw std::invalid_argument("malformed integer '" + raw + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("malformed integer '" + raw + "'");
  // cpp_int's string constructor treats a leading 0 as an octal prefix.
  std::size_t nz = s.find_first_not_of('0');
  s = (nz == std::string::npos) ? "0" : s.substr(nz);
  BigInt v(s);
  return neg ? BigInt(-v) : v;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

[[noreturn]] void fail(const char* what, const std::string& msg) {
  throw std::invalid_argument(std::string(what) + ": " + msg);
}

Eigen::MatrixXd read_matrix(const json& j, int dim, const char* what,
                            const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    fail(what, name + " must be a " + std::to_string(dim) + "x" +
                   std::to_string(dim) + " array of arrays");
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      fail(what, name + " row " + std::to_string(r) + " must have " +
                     std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c) {
      const json& e = row[static_cast<std::size_t>(c)];
      if (!e.is_number())
        fail(what, name + " entry (" + std::to_string(r) + "," +
                       std::to_string(c) + ") is not a number");
      m(r, c) = e.get<double>();
    }
  }
  return m;
}

ActionValue action_from_field(const json& j, const char* what,
                              const std::string& name) {
  if (j.is_string()) return parse_action(j.get<std::string>());
  if (j.is_number()) return ActionValue::real(j.get<double>());
  fail(what, name + " must be an action string or a number");
}

long long int_from_field(const json& j, const char* what,
                         const std::string& name) {
  if (j.is_number_integer()) return j.get<long long>();
  fail(what, name + " must be an integer");
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t slash = s.find('/');
  if (slash != std::string::npos) {
    if (s.find('/', slash + 1) != std::string::npos ||
        s.find('.') != std::string::npos)
      throw std::invalid_argument("malformed fraction '" + text + "'");
    BigInt num = parse_bigint(s.substr(0, slash));
    BigInt den = parse_bigint(s.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  std::size_t dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot);
    std::string tail = s.substr(dot + 1);
    if (tail.find('.') != std::string::npos)
      throw std::invalid_argument("malformed decimal '" + text + "'");
    bool neg = false;
    if (!head.empty() && (head[0] == '+' || head[0] == '-')) {
      neg = head[0] == '-';
      head = head.substr(1);
    }
    std::string digits = head + tail;
    if (digits.empty())
      throw std::invalid_argument("malformed decimal '" + text + "'");
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("malformed decimal '" + text + "'");
    BigInt num = parse_bigint(digits);
    BigInt den = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    Rational r(num, den);
    if (neg) r = -r;
    return r;
  }
  return Rational(parse_bigint(s));
}

std::string print_rational(const Rational& q) { return q.str(); }

ActionValue parse_action(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty action value");
  if (s == "inf" || s == "+inf") return ActionValue::pos_inf();
  if (s == "-inf") return ActionValue::neg_inf();
  std::size_t pos = s.rfind("pi");
  if (pos != std::string::npos) {
    if (pos + 2 != s.size())
      throw std::invalid_argument("malformed action '" + text +
                                  "': trailing text after 'pi'");
    std::string coeff = trim(s.substr(0, pos));
    if (!coeff.empty() && coeff.back() == '*')
      coeff = trim(coeff.substr(0, coeff.size() - 1));
    if (coeff.empty() || coeff == "+")
      return ActionValue::pi_rational(Rational(1));
    if (coeff == "-") return ActionValue::pi_rational(Rational(-1));
    return ActionValue::pi_rational(parse_rational(coeff));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed action '" + text + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw std::invalid_argument("malformed action '" + text + "'");
  return ActionValue::real(v);
}

std::string print_action(const ActionValue& a) {
  switch (a.kind()) {
    case ActionValue::Kind::NegInf:
      return "-inf";
    case ActionValue::Kind::PosInf:
      return "inf";
    case ActionValue::Kind::PiRational:
      return a.coeff().str() + "*pi";
    case ActionValue::Kind::Real:
      return fmt_double(a.to_double());
  }
  throw std::logic_error("unreachable action kind");
}

// ---- complexes --------------------------------------------------------------

chainalg::FilteredComplex complex_from_json(const std::string& text) {
  const char* what = "complex file";
  json j = parse_json_text(text, what);
  if (!j.is_object()) fail(what, "top level must be an object");
  if (!j.contains("generators") || !j["generators"].is_array())
    fail(what, "missing 'generators' array");

  std::vector<chainalg::Generator> gens;
  std::map<std::string, int> index_of;
  for (const json& g : j["generators"]) {
    if (!g.is_object()) fail(what, "generator entries must be objects");
    if (!g.contains("id") || !g["id"].is_string())
      fail(what, "generator without a string 'id'");
    chainalg::Generator gen;
    gen.id = g["id"].get<std::string>();
    if (!g.contains("degree"))
      fail(what, "generator '" + gen.id + "' has no 'degree'");
    gen.degree =
        static_cast<int>(int_from_field(g["degree"], what, "degree"));
    if (!g.contains("action"))
      fail(what, "generator '" + gen.id + "' has no 'action'");
    gen.action = action_from_field(g["action"], what,
                                   "action of '" + gen.id + "'");
    if (g.contains("label")) {
      if (!g["label"].is_string())
        fail(what, "label of '" + gen.id + "' must be a string");
      gen.label = g["label"].get<std::string>();
    }
    if (index_of.count(gen.id))
      fail(what, "duplicate generator id '" + gen.id + "'");
    index_of[gen.id] = static_cast<int>(gens.size());
    gens.push_back(std::move(gen));
  }

  std::vector<chainalg::DiffEntry> diff;
  if (j.contains("differential")) {
    if (!j["differential"].is_array())
      fail(what, "'differential' must be an array");
    for (const json& d : j["differential"]) {
      if (!d.is_array() || d.size() != 3 || !d[0].is_string() ||
          !d[1].is_string())
        fail(what,
             "differential entries must be [\"src_id\", \"dst_id\", coeff]");
      std::string src = d[0].get<std::string>();
      std::string dst = d[1].get<std::string>();
      long long coeff = int_from_field(d[2], what, "differential coefficient");
      auto is = index_of.find(src);
      auto id = index_of.find(dst);
      if (is == index_of.end())
        fail(what, "differential references unknown id '" + src + "'");
      if (id == index_of.end())
        fail(what, "differential references unknown id '" + dst + "'");
      diff.push_back({is->second, id->second, coeff});
    }
  }
  return chainalg::FilteredComplex(std::move(gens), std::move(diff));
}

std::string complex_to_json(const chainalg::FilteredComplex& c) {
  ojson out;
  out["generators"] = ojson::array();
  for (const chainalg::Generator& g : c.generators()) {
    ojson jg;
    jg["id"] = g.id;
    jg["degree"] = g.degree;
    jg["action"] = print_action(g.action);
    if (!g.label.empty()) jg["label"] = g.label;
    out["generators"].push_back(std::move(jg));
  }
  out["differential"] = ojson::array();
  for (const auto& [key, coeff] : c.differential()) {
    out["differential"].push_back(
        ojson::array({c.gen(key.first).id, c.gen(key.second).id, coeff}));
  }
  return out.dump(2) + "\n";
}

// ---- Morse data -------------------------------------------------------------

MorseData morse_from_json(const std::string& text) {
  const char* what = "morse file";
  json j = parse_json_text(text, what);
  if (!j.is_object()) fail(what, "top level must be an object");
  if (!j.contains("critical_points") || !j["critical_points"].is_array())
    fail(what, "missing 'critical_points' array");
  MorseData out;
  for (const json& p : j["critical_points"]) {
    if (!p.is_object() || !p.contains("id") || !p["id"].is_string() ||
        !p.contains("index") || !p.contains("value") ||
        !p["value"].is_number())
      fail(what,
           "critical points must be {\"id\": str, \"index\": int, "
           "\"value\": number}");
    chainalg::CriticalPoint cp;
    cp.id = p["id"].get<std::string>();
    cp.index = static_cast<int>(int_from_field(p["index"], what, "index"));
    cp.value = p["value"].get<double>();
    out.points.push_back(std::move(cp));
  }
  if (j.contains("trajectories")) {
    if (!j["trajectories"].is_array())
      fail(what, "'trajectories' must be an array");
    for (const json& t : j["trajectories"]) {
      if (!t.is_object() || !t.contains("from") || !t["from"].is_string() ||
          !t.contains("to") || !t["to"].is_string() || !t.contains("count"))
        fail(what,
             "trajectories must be {\"from\": str, \"to\": str, "
             "\"count\": int}");
      chainalg::TrajectoryCount tc;
      tc.from = t["from"].get<std::string>();
      tc.to = t["to"].get<std::string>();
      tc.count = int_from_field(t["count"], what, "count");
      out.trajectories.push_back(std::move(tc));
    }
  }
  return out;
}

// ---- matrix paths -----------------------------------------------------------

PathFile path_from_json(const std::string& text, const Tolerances& defaults) {
  const char* what = "path file";
  json j = parse_json_text(text, what);
  if (!j.is_object()) fail(what, "top level must be an object");
  if (!j.contains("dim_half"))
    fail(what, "missing 'dim_half' (the number n of conjugate pairs)");
  const int n = static_cast<int>(int_from_field(j["dim_half"], what, "dim_half"));
  if (n < 1) fail(what, "dim_half must be >= 1");

  Tolerances tol = defaults;
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    if (!t.is_object()) fail(what, "'tolerances' must be an object");
    for (const auto& [key, val] : t.items()) {
      if (!val.is_number())
        fail(what, "tolerance '" + key + "' must be a number");
      double v = val.get<double>();
      if (key == "sym")
        tol.sym = v;
      else if (key == "cross")
        tol.cross = v;
      else if (key == "ker")
        tol.ker = v;
      else if (key == "eig")
        tol.eig = v;
      else if (key == "gen")
        tol.gen = v;
      else
        fail(what, "unknown tolerance '" + key +
                       "' (expected sym, cross, ker, eig, gen)");
    }
  }

  if (!j.contains("segments") || !j["segments"].is_array() ||
      j["segments"].empty())
    fail(what, "missing non-empty 'segments' array");

  auto check_n = [&](const json& seg, int idx) {
    if (seg.contains("n")) {
      long long sn = int_from_field(seg["n"], what, "segment n");
      if (sn != n)
        fail(what, "segment " + std::to_string(idx) + " has n=" +
                       std::to_string(sn) + " but dim_half is " +
                       std::to_string(n));
    }
  };
  auto num_field = [&](const json& seg, int idx, const char* name) {
    if (!seg.contains(name) || !seg[name].is_number())
      fail(what, "segment " + std::to_string(idx) + " needs a numeric '" +
                     std::string(name) + "'");
    return seg[name].get<double>();
  };

  std::optional<symplin::SymplecticPath> acc;
  int idx = 0;
  for (const json& seg : j["segments"]) {
    if (!seg.is_object() || !seg.contains("kind") || !seg["kind"].is_string())
      fail(what, "segment " + std::to_string(idx) +
                     " must be an object with a string 'kind'");
    const std::string kind = seg["kind"].get<std::string>();
    std::optional<symplin::SymplecticPath> built;

    if (kind == "rotation") {
      check_n(seg, idx);
      if (!seg.contains("lambda"))
        fail(what, "rotation segment " + std::to_string(idx) +
                       " needs 'lambda'");
      double lam = action_from_field(seg["lambda"], what, "lambda").to_double();
      built = symplin::SymplecticPath::rotation(n, lam);
    } else if (kind == "shear") {
      check_n(seg, idx);
      double rate = num_field(seg, idx, "rate");
      int plane = 0;
      if (seg.contains("plane"))
        plane = static_cast<int>(int_from_field(seg["plane"], what, "plane"));
      built = symplin::SymplecticPath::shear(n, rate, plane);
    } else if (kind == "exp_const") {
      Eigen::MatrixXd S = read_matrix(seg.at("S"), 2 * n, what, "S");
      built = symplin::SymplecticPath::exp_const(S);
    } else if (kind == "exp_const_from") {
      Eigen::MatrixXd S = read_matrix(seg.at("S"), 2 * n, what, "S");
      Eigen::MatrixXd base = read_matrix(seg.at("base"), 2 * n, what, "base");
      built = symplin::SymplecticPath::exp_const_from(S, base, tol.sym);
    } else if (kind == "sampled") {
      if (!seg.contains("grid") || !seg["grid"].is_array())
        fail(what, "sampled segment " + std::to_string(idx) +
                       " needs a 'grid' array");
      if (!seg.contains("matrices") || !seg["matrices"].is_array())
        fail(what, "sampled segment " + std::to_string(idx) +
                       " needs a 'matrices' array");
      std::vector<double> grid;
      for (const json& g : seg["grid"]) {
        if (!g.is_number())
          fail(what, "sampled grid entries must be numbers");
        grid.push_back(g.get<double>());
      }
      std::vector<Eigen::MatrixXd> mats;
      for (const json& m : seg["matrices"])
        mats.push_back(read_matrix(m, 2 * n, what, "sampled matrix"));
      built = symplin::SymplecticPath::sampled(grid, mats, tol.sym);
    } else if (kind == "sphere_orbit") {
      check_n(seg, idx);
      int l = static_cast<int>(int_from_field(seg.at("l"), what, "l"));
      double curvature = num_field(seg, idx, "curvature");
      built = symplin::SymplecticPath::sphere_orbit_path(l, n, curvature);
    } else if (kind == "perturbed_orbit") {
      check_n(seg, idx);
      int l = static_cast<int>(int_from_field(seg.at("l"), what, "l"));
      double delta = num_field(seg, idx, "delta");
      if (!seg.contains("hessian_eigs") || !seg["hessian_eigs"].is_array())
        fail(what, "perturbed_orbit segment " + std::to_string(idx) +
                       " needs 'hessian_eigs'");
      std::vector<double> eigs;
      for (const json& e : seg["hessian_eigs"]) {
        if (!e.is_number())
          fail(what, "hessian_eigs entries must be numbers");
        eigs.push_back(e.get<double>());
      }
      built = symplin::SymplecticPath::perturbed_orbit_path(l, n, delta, eigs);
    } else {
      fail(what, "segment " + std::to_string(idx) + " has unknown kind '" +
                     kind +
                     "' (expected rotation, shear, exp_const, exp_const_from, "
                     "sampled, sphere_orbit, perturbed_orbit)");
    }

    acc = acc ? symplin::SymplecticPath::concat(*acc, *built, tol.sym)
              : std::move(built);
    ++idx;
  }
  return {std::move(*acc), tol};
}

// ---- serializers ------------------------------------------------------------

std::string homology_to_json(const chainalg::HomologyTable& t) {
  ojson out;
  out["groups"] = ojson::array();
  for (const auto& [deg, g] : t) {
    ojson jg;
    jg["degree"] = deg;
    jg["free_rank"] = g.free_rank;
    jg["torsion"] = ojson::array();
    for (const BigInt& f : g.torsion) jg["torsion"].push_back(f.str());
    jg["text"] = g.str();
    out["groups"].push_back(std::move(jg));
  }
  return out.dump(2) + "\n";
}

std::string homology_to_tsv(const chainalg::HomologyTable& t) {
  std::string s = "degree\tgroup\n";
  for (const auto& [deg, g] : t)
    s += std::to_string(deg) + "\t" + g.str() + "\n";
  return s;
}

std::string index_to_json(const symplin::IndexResult& r) {
  ojson out;
  out["value"] = r.str();
  out["twice_value"] = r.twice_value;
  out["crossings"] = ojson::array();
  for (const symplin::Crossing& c : r.crossings) {
    ojson jc;
    jc["t"] = c.t;
    jc["segment"] = c.segment;
    jc["endpoint"] = c.endpoint;
    jc["kernel_dim"] = c.kernel_dim;
    jc["signature"] = c.signature;
    jc["zero_eigenvalues"] = c.zero_count;
    out["crossings"].push_back(std::move(jc));
  }
  out["notes"] = ojson::array();
  for (const std::string& nte : r.notes) out["notes"].push_back(nte);
  return out.dump(2) + "\n";
}

std::string index_to_tsv(const symplin::IndexResult& r) {
  std::string s = "index\t" + r.str() + "\n";
  for (const symplin::Crossing& c : r.crossings) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", c.t);
    s += std::string("crossing\t") + buf + "\t" + std::to_string(c.segment) +
         "\t" + (c.endpoint ? "endpoint" : "interior") + "\t" +
         std::to_string(c.kernel_dim) + "\t" + std::to_string(c.signature) +
         "\t" + std::to_string(c.zero_count) + "\n";
  }
  for (const std::string& nte : r.notes) s += "note\t" + nte + "\n";
  return s;
}

std::string spectrum_to_json(const domains::ActionSpectrum& s) {
  ojson out;
  out["entries"] = ojson::array();
  for (const domains::SpectrumEntry& e : s.entries) {
    ojson je;
    je["action"] = print_action(e.action);
    je["index"] = e.index;
    je["multiplicity"] = e.multiplicity;
    out["entries"].push_back(std::move(je));
  }
  return out.dump(2) + "\n";
}

std::string spectrum_to_tsv(const domains::ActionSpectrum& s) {
  std::string out = "action\tindex\tmultiplicity\n";
  for (const domains::SpectrumEntry& e : s.entries)
    out += print_action(e.action) + "\t" + std::to_string(e.index) + "\t" +
           std::to_string(e.multiplicity) + "\n";
  return out;
}

std::string tower_to_json(const domains::BallTowerResult& t) {
  ojson out;
  out["stages"] = ojson::array();
  for (const ActionValue& s : t.stages) out["stages"].push_back(print_action(s));
  out["direction"] =
      t.report.direction == chainalg::TowerDirection::Inverse ? "inverse"
                                                              : "direct";
  out["all_stabilized"] = t.report.all_stabilized;
  out["degrees"] = ojson::array();
  for (const auto& [deg, st] : t.report.degrees) {
    ojson jd;
    jd["degree"] = deg;
    jd["stabilized"] = st.stabilized;
    jd["value"] = st.value.str();
    jd["witness_stage"] = st.witness_stage;
    jd["note"] = st.note;
    out["degrees"].push_back(std::move(jd));
  }
  out["limit"] = ojson::array();
  for (const auto& [deg, g] : t.limit) {
    ojson jl;
    jl["degree"] = deg;
    jl["group"] = g.str();
    out["limit"].push_back(std::move(jl));
  }
  return out.dump(2) + "\n";
}

std::string tower_to_tsv(const domains::BallTowerResult& t) {
  std::string s;
  for (std::size_t i = 0; i < t.stages.size(); ++i)
    s += "stage\t" + std::to_string(i) + "\t" + print_action(t.stages[i]) +
         "\n";
  for (const auto& [deg, st] : t.report.degrees)
    s += "degree\t" + std::to_string(deg) + "\t" +
         (st.stabilized ? "stabilized" : "open") + "\t" + st.value.str() +
         "\t" + std::to_string(st.witness_stage) + "\t" + st.note + "\n";
  s += std::string("all_stabilized\t") +
       (t.report.all_stabilized ? "true" : "false") + "\n";
  return s;
}

std::string classify_to_json(const domains::ClassifyResult& c) {
  ojson out;
  out["equal"] = c.equal;
  if (!c.equal) {
    out["witness_action"] = print_action(c.witness_action);
    out["witness_degree"] = c.witness_degree;
    out["left"] = c.left.str();
    out["right"] = c.right.str();
  }
  return out.dump(2) + "\n";
}

std::string classify_to_tsv(const domains::ClassifyResult& c) {
  std::string s = std::string("equal\t") + (c.equal ? "true" : "false") + "\n";
  if (!c.equal) {
    s += "witness_action\t" + print_action(c.witness_action) + "\n";
    s += "witness_degree\t" + std::to_string(c.witness_degree) + "\n";
    s += "left\t" + c.left.str() + "\n";
    s += "right\t" + c.right.str() + "\n";
  }
  return s;
}

std::string kunneth_to_json(const chainalg::KunnethReport& r) {
  ojson out;
  out["equal"] = r.equal;
  out["field"] = r.field == 0 ? std::string("Q")
                              : "F" + std::to_string(r.field);
  out["degrees"] = ojson::array();
  for (const auto& [deg, pair] : r.dims) {
    ojson jd;
    jd["degree"] = deg;
    jd["tensor_dim"] = pair.first;
    jd["expected"] = pair.second;
    out["degrees"].push_back(std::move(jd));
  }
  return out.dump(2) + "\n";
}

std::string kunneth_to_tsv(const chainalg::KunnethReport& r) {
  std::string s = std::string("equal\t") + (r.equal ? "true" : "false") + "\n";
  s += "field\t" + (r.field == 0 ? std::string("Q")
                                 : "F" + std::to_string(r.field)) +
       "\n";
  for (const auto& [deg, pair] : r.dims)
    s += "degree\t" + std::to_string(deg) + "\t" +
         std::to_string(pair.first) + "\t" + std::to_string(pair.second) +
         "\n";
  return s;
}

}  // namespace symhom::interchange

#include "odba/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "odba/reference_states.hpp"
#include "odba/vertex.hpp"

namespace odba {

namespace {

void require_keys(const json& j, const std::string& where, const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown field \"" + k + "\"");
  for (const auto& k : required)
    if (!j.contains(k)) throw ConfigError(where + ": missing field \"" + k + "\"");
}

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + ": expected a number");
  return j.get<double>();
}

BoundaryKind kind_from_json(const json& j) {
  try {
    if (j.is_number_integer()) return parse_boundary_kind(std::to_string(j.get<int>()));
    if (j.is_string()) return parse_boundary_kind(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("boundary.kind: ") + e.what());
  }
  throw ConfigError("boundary.kind: expected \"I\", \"II\", \"III\" or 1..3");
}

void write_number(std::ostringstream& os, double v) {
  if (!std::isfinite(v)) {
    os << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

void write(std::ostringstream& os, const json& j, int indent, int depth) {
  const std::string pad = indent > 0 ? std::string(size_t(indent) * (depth + 1), ' ') : "";
  const std::string close = indent > 0 ? std::string(size_t(indent) * depth, ' ') : "";
  const char* nl = indent > 0 ? "\n" : "";
  // [re, im] pairs and other short numeric arrays stay on one line.
  auto flat = [](const json& a) {
    if (a.size() > 4) return false;
    for (const auto& x : a)
      if (!x.is_number()) return false;
    return true;
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{" << nl;
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << "," << nl;
        first = false;
        os << pad << json(k).dump() << (indent > 0 ? ": " : ":");
        write(os, v, indent, depth + 1);
      }
      os << nl << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (flat(j)) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << (indent > 0 ? ", " : ",");
          write(os, j[i], indent, depth + 1);
        }
        os << "]";
        return;
      }
      os << "[" << nl;
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << "," << nl;
        os << pad;
        write(os, j[i], indent, depth + 1);
      }
      os << nl << close << "]";
      return;
    }
    case json::value_t::number_float:
      write_number(os, j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(what + ": expected a number or [re, im]");
}

RunConfig parse_config(const json& j) {
  require_keys(j, "config", {"N", "eta", "theta", "boundary", "dual", "tolerances", "rng_seed"},
               {"N", "eta", "boundary", "dual"});
  RunConfig cfg;
  if (!j["N"].is_number_integer() || j["N"].get<int>() < 1) throw ConfigError("N: expected a positive integer");
  const int n = j["N"].get<int>();
  const cplx eta = complex_from_json(j["eta"], "eta");
  try {
    validate_generic(BulkParams{eta});
  } catch (const std::exception& e) {
    throw ConfigError(std::string("eta: ") + e.what());
  }
  cfg.spec = ChainSpec::homogeneous(n, eta);
  if (j.contains("theta")) {
    if (!j["theta"].is_array() || static_cast<int>(j["theta"].size()) != n)
      throw ConfigError("theta: expected an array of N values");
    for (int i = 0; i < n; ++i) cfg.spec.theta[i] = complex_from_json(j["theta"][i], "theta");
  }

  const json& b = j["boundary"];
  require_keys(b, "boundary", {"kind", "zeta", "c", "c1"}, {"kind", "zeta", "c", "c1"});
  const BoundaryKind kind = kind_from_json(b["kind"]);
  const json& d = j["dual"];
  require_keys(d, "dual", {"zeta", "c", "c1"}, {"zeta", "c", "c1"});
  auto side = [&](const json& s, const std::string& where) {
    const cplx zeta = complex_from_json(s["zeta"], where + ".zeta");
    const cplx c = complex_from_json(s["c"], where + ".c");
    const cplx c1 = complex_from_json(s["c1"], where + ".c1");
    if (c == 0.0) throw ConfigError(where + ".c: must be nonzero (the inhomogeneous term needs c c' != 0)");
    if (c1 == 0.0) throw ConfigError(where + ".c1: must be nonzero");
    try {
      return make_boundary(kind, zeta, c, c1);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  };
  cfg.pair = make_pair(side(b, "boundary"), side(d, "dual"));

  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    require_keys(t, "tolerances", {"newton", "match"}, {});
    if (t.contains("newton")) cfg.tolerances.newton = number(t["newton"], "tolerances.newton");
    if (t.contains("match")) cfg.tolerances.match = number(t["match"], "tolerances.match");
    if (!(cfg.tolerances.newton > 0) || !(cfg.tolerances.match > 0))
      throw ConfigError("tolerances: must be positive");
  }
  if (j.contains("rng_seed")) {
    const json& seed = j["rng_seed"];
    if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0))
      throw ConfigError("rng_seed: expected a non-negative integer");
    cfg.rng_seed = seed.get<std::uint64_t>();
  }
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

namespace {
json parse_text(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}
}  // namespace

RunConfig load_config(const std::string& path) { return parse_config(parse_text(read_file(path), path)); }

json config_to_json(const RunConfig& cfg) {
  json j;
  j["N"] = cfg.spec.n_sites;
  j["eta"] = complex_to_json(cfg.spec.eta);
  json th = json::array();
  for (cplx t : cfg.spec.theta) th.push_back(complex_to_json(t));
  j["theta"] = th;
  const auto& m = cfg.pair.minus;
  const auto& p = cfg.pair.plus;
  j["boundary"] = {{"kind", to_string(m.kind)},
                   {"zeta", complex_to_json(m.zeta)},
                   {"c", complex_to_json(m.c)},
                   {"c1", complex_to_json(m.c1)}};
  j["dual"] = {{"zeta", complex_to_json(p.zeta)}, {"c", complex_to_json(p.c)}, {"c1", complex_to_json(p.c1)}};
  j["tolerances"] = {{"newton", cfg.tolerances.newton}, {"match", cfg.tolerances.match}};
  j["rng_seed"] = cfg.rng_seed;
  return j;
}

RunConfig reference_config() {
  RunConfig cfg;
  cfg.spec = reference_chain();
  cfg.pair = reference_pair();
  return cfg;
}

std::vector<BetheState> parse_states(const json& j, int n_sites) {
  if (!j.is_array()) throw ConfigError("seeds: expected an array of states");
  std::vector<BetheState> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string where = "seeds[" + std::to_string(i) + "]";
    const json& s = j[i];
    require_keys(s, where, {"M", "lambda1", "lambda2"}, {"M", "lambda1", "lambda2"});
    if (!s["M"].is_number_integer()) throw ConfigError(where + ".M: expected an integer");
    BetheState st;
    st.sector = s["M"].get<int>();
    for (const char* key : {"lambda1", "lambda2"}) {
      if (!s[key].is_array()) throw ConfigError(where + "." + key + ": expected an array");
      auto& v = std::string(key) == "lambda1" ? st.lambda1 : st.lambda2;
      for (const auto& z : s[key]) v.push_back(complex_from_json(z, where + "." + key));
    }
    if (st.sector < 0 || st.sector > n_sites)
      throw ConfigError(where + ".M: sector outside [0, " + std::to_string(n_sites) + "]");
    try {
      validate(st, n_sites);
    } catch (const std::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
    out.push_back(std::move(st));
  }
  return out;
}

std::vector<BetheState> load_states(const std::string& path, int n_sites) {
  return parse_states(parse_text(read_file(path), path), n_sites);
}

json state_to_json(const BetheState& s) {
  json l1 = json::array(), l2 = json::array();
  for (cplx z : s.lambda1) l1.push_back(complex_to_json(z));
  for (cplx z : s.lambda2) l2.push_back(complex_to_json(z));
  return {{"M", s.sector}, {"lambda1", l1}, {"lambda2", l2}};
}

json states_to_json(const std::vector<BetheState>& states) {
  json a = json::array();
  for (const auto& s : states) a.push_back(state_to_json(s));
  return a;
}

json report_to_json(const Report& r) {
  json a = json::array();
  for (const auto& c : r) {
    json e = {{"suite", c.suite}, {"check", c.name}, {"residual", c.residual}, {"tolerance", c.tolerance},
              {"pass", c.pass}};
    if (!c.note.empty()) e["note"] = c.note;
    a.push_back(e);
  }
  return a;
}

std::string dump(const json& j, int indent) {
  std::ostringstream os;
  write(os, j, indent, 0);
  os << "\n";
  return os.str();
}

}  // namespace odba

#pragma once

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "braces.hpp"
#include "carrier.hpp"
#include "verdict.hpp"

namespace parayb::io {

using nlohmann::json;

inline json parse(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json load(const std::string& path) { return parse(read_file(path), path); }

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing field \"" + key + "\"");
  return j.at(key);
}

inline std::size_t count(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) throw InputError(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Elem element(const json& j, std::size_t n, const std::string& where) {
  auto v = count(j, where);
  if (v >= n) throw InputError(where + ": element " + std::to_string(v) + " outside the carrier");
  return static_cast<Elem>(v);
}

inline void expect_array(const json& j, std::size_t len, const std::string& where) {
  if (!j.is_array() || j.size() != len)
    throw InputError(where + ": expected an array of length " + std::to_string(len));
}

}  // namespace detail

// {"n": n, "labels": [...] (optional), "Y": [...], "family": [zi][zj][a][x]}.
// Elements are carrier indices.
inline ParamFamily family_from_json(const json& j, const std::string& where = "family") {
  using namespace detail;
  const auto n = count(field(j, "n", where), where + "/n");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    expect_array(j["labels"], n, where + "/labels");
    for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  ParamSubset y;
  const auto& yj = field(j, "Y", where);
  if (!yj.is_array()) throw InputError(where + "/Y: expected an array");
  for (std::size_t i = 0; i < yj.size(); ++i) y.elems.push_back(element(yj[i], n, where + "/Y/" + std::to_string(i)));
  try {
    y.validate(n);
  } catch (const InputError& e) {
    throw InputError(where + "/Y: " + e.what());
  }
  ParamFamily fam(Carrier(n, labels), y);
  const auto m = y.size();
  const auto& f = field(j, "family", where);
  expect_array(f, m, where + "/family");
  for (std::size_t i = 0; i < m; ++i) {
    expect_array(f[i], m, where + "/family/" + std::to_string(i));
    for (std::size_t k = 0; k < m; ++k) {
      const std::string p = where + "/family/" + std::to_string(i) + "/" + std::to_string(k);
      expect_array(f[i][k], n, p);
      for (Elem a = 0; a < n; ++a) {
        expect_array(f[i][k][a], n, p + "/" + std::to_string(a));
        for (Elem x = 0; x < n; ++x)
          fam.set(i, k, a, x, element(f[i][k][a][x], n, p + "/" + std::to_string(a) + "/" + std::to_string(x)));
      }
    }
  }
  return fam;
}

inline json family_to_json(const ParamFamily& f) {
  json j;
  j["n"] = f.n();
  if (f.carrier().has_labels()) j["labels"] = f.carrier().labels();
  j["Y"] = f.params().elems;
  json fam = json::array();
  for (std::size_t i = 0; i < f.m(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < f.m(); ++k) {
      json maps = json::array();
      for (Elem a = 0; a < f.n(); ++a) maps.push_back(f.map(i, k, a).table());
      row.push_back(std::move(maps));
    }
    fam.push_back(std::move(row));
  }
  j["family"] = std::move(fam);
  return j;
}

inline ParamYBMap solution_from_json(const json& j, const std::string& where = "solution") {
  ParamYBMap r{family_from_json(detail::field(j, "sigma", where), where + "/sigma"),
               family_from_json(detail::field(j, "tau", where), where + "/tau")};
  if (!r.sigma.same_shape(r.tau)) throw InputError(where + ": sigma and tau differ in shape");
  return r;
}

inline json solution_to_json(const ParamYBMap& r) {
  return {{"sigma", family_to_json(r.sigma)}, {"tau", family_to_json(r.tau)}};
}

// {"n": n, "labels": [...] (optional), "add": n x n, "mul": n x n}.
inline SkewBrace brace_from_json(const json& j, const std::string& where = "brace") {
  using namespace detail;
  const auto n = count(field(j, "n", where), where + "/n");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    expect_array(j["labels"], n, where + "/labels");
    for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  auto table = [&](const char* key) {
    const auto& t = field(j, key, where);
    const std::string p = where + "/" + key;
    expect_array(t, n, p);
    std::vector<Elem> out;
    for (std::size_t a = 0; a < n; ++a) {
      expect_array(t[a], n, p + "/" + std::to_string(a));
      for (std::size_t b = 0; b < n; ++b) out.push_back(element(t[a][b], n, p + "/" + std::to_string(a) + "/" + std::to_string(b)));
    }
    return out;
  };
  auto add = table("add");
  auto mul = table("mul");
  return SkewBrace::from_tables(n, std::move(add), std::move(mul), std::move(labels));
}

inline json brace_to_json(const SkewBrace& b) {
  const auto n = b.size();
  json add = json::array(), mul = json::array();
  for (Elem a = 0; a < n; ++a) {
    json ra = json::array(), rm = json::array();
    for (Elem c = 0; c < n; ++c) {
      ra.push_back(b.plus(a, c));
      rm.push_back(b.times(a, c));
    }
    add.push_back(std::move(ra));
    mul.push_back(std::move(rm));
  }
  json j{{"n", n}, {"add", std::move(add)}, {"mul", std::move(mul)}};
  if (b.carrier().has_labels()) j["labels"] = b.carrier().labels();
  return j;
}

inline json counterexample_to_json(const Counterexample& c, const Carrier* carrier = nullptr) {
  json at = json::object();
  for (const auto& [k, v] : c.at) {
    if (carrier && k != "tree" && v < carrier->size())
      at[k] = carrier->label(static_cast<Elem>(v));
    else
      at[k] = v;
  }
  json j{{"relation", c.relation}, {"at", std::move(at)}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline json verdict_to_json(const Verdict& v, const Carrier* carrier = nullptr) {
  json j{{"check", v.check}, {"passed", v.ok}};
  if (v.counterexample) j["counterexample"] = counterexample_to_json(*v.counterexample, carrier);
  return j;
}

}  // namespace parayb::io

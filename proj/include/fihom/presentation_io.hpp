#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fihom/fimodule.hpp"
#include "fihom/invariants.hpp"
#include "fihom/koszul.hpp"

namespace fihom {

using nlohmann::json;

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModuleFile {
  FieldSpec field;
  int truncation = 0;
  Presentation presentation;
};

namespace io_detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& why) {
  throw parse_error("at " + path + ": " + why);
}

inline const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail(path, std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline int need_int(const json& j, const std::string& path, int lo) {
  if (!j.is_number_integer())
    fail(path, "expected an integer");
  int v = j.get<int>();
  if (v < lo) fail(path, "value below " + std::to_string(lo));
  return v;
}

// coefficient strings must parse exactly in the chosen field
inline void check_coeff(const FieldSpec& fs, const std::string& s,
                        const std::string& path) {
  try {
    if (fs.is_rational()) {
      Rational::parse(s);
    } else {
      PrimeField(fs.p).parse(s);
    }
  } catch (const std::exception& e) {
    fail(path, std::string("bad coefficient \"") + s + "\": " + e.what());
  }
}

}  // namespace io_detail

inline ModuleFile parse_module_file(const std::string& text) {
  using io_detail::fail;
  using io_detail::need;
  using io_detail::need_int;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("$", "module file must be a JSON object");
  ModuleFile mf;
  // field
  {
    const json& f = need(j, "field", "$");
    if (f.is_string() && f.get<std::string>() == "Q") {
      mf.field = FieldSpec::rationals();
    } else if (f.is_object() && f.contains("Fp")) {
      const json& p = f.at("Fp");
      if (!p.is_number_integer() || p.get<long>() < 2)
        fail("$.field.Fp", "expected an integer >= 2");
      try {
        mf.field = FieldSpec::prime(static_cast<std::uint32_t>(p.get<long>()));
      } catch (const std::exception& e) {
        fail("$.field.Fp", e.what());
      }
    } else {
      fail("$.field", "expected \"Q\" or {\"Fp\": p}");
    }
  }
  mf.truncation = need_int(need(j, "truncation", "$"), "$.truncation", 0);
  // generators
  std::map<std::string, int> label_index;
  {
    const json& gens = need(j, "generators", "$");
    if (!gens.is_array()) fail("$.generators", "expected an array");
    int idx = 0;
    for (const auto& g : gens) {
      std::string path = "$.generators[" + std::to_string(idx) + "]";
      int deg = need_int(need(g, "degree", path), path + ".degree", 0);
      const json& lab = need(g, "label", path);
      if (!lab.is_string()) fail(path + ".label", "expected a string");
      std::string label = lab.get<std::string>();
      if (label_index.count(label)) fail(path + ".label", "duplicate label \"" + label + "\"");
      label_index[label] = idx;
      mf.presentation.generator_degrees.push_back(deg);
      mf.presentation.generator_labels.push_back(label);
      ++idx;
    }
  }
  // relations
  if (j.contains("relations")) {
    const json& rels = j.at("relations");
    if (!rels.is_array()) fail("$.relations", "expected an array");
    int ridx = 0;
    for (const auto& r : rels) {
      std::string rpath = "$.relations[" + std::to_string(ridx) + "]";
      PresRelation rel;
      rel.degree = need_int(need(r, "degree", rpath), rpath + ".degree", 0);
      const json& terms = need(r, "terms", rpath);
      if (!terms.is_array()) fail(rpath + ".terms", "expected an array");
      int tidx = 0;
      for (const auto& t : terms) {
        std::string tpath = rpath + ".terms[" + std::to_string(tidx) + "]";
        PresTerm term;
        const json& gl = need(t, "gen", tpath);
        if (!gl.is_string()) fail(tpath + ".gen", "expected a generator label");
        auto it = label_index.find(gl.get<std::string>());
        if (it == label_index.end())
          fail(tpath + ".gen", "unknown generator \"" + gl.get<std::string>() + "\"");
        term.gen = it->second;
        const json& inj = need(t, "injection", tpath);
        if (!inj.is_array()) fail(tpath + ".injection", "expected an array of values");
        std::vector<int> img;
        for (const auto& x : inj) {
          if (!x.is_number_integer()) fail(tpath + ".injection", "expected integers");
          img.push_back(x.get<int>());
        }
        int m = mf.presentation.generator_degrees[static_cast<size_t>(term.gen)];
        try {
          term.inj = Injection(m, rel.degree, img);
        } catch (const std::exception& e) {
          fail(tpath + ".injection", e.what());
        }
        const json& c = need(t, "coeff", tpath);
        if (!c.is_string())
          fail(tpath + ".coeff", "expected an exact scalar string");
        term.coeff = c.get<std::string>();
        io_detail::check_coeff(mf.field, term.coeff, tpath + ".coeff");
        rel.terms.push_back(std::move(term));
        ++tidx;
      }
      mf.presentation.relations.push_back(std::move(rel));
      ++ridx;
    }
  }
  mf.presentation.check();
  return mf;
}

inline json field_to_json(const FieldSpec& fs) {
  if (fs.is_rational()) return json("Q");
  return json{{"Fp", fs.p}};
}

inline json serialize_module_file(const ModuleFile& mf) {
  json j;
  j["field"] = field_to_json(mf.field);
  j["truncation"] = mf.truncation;
  j["generators"] = json::array();
  for (size_t i = 0; i < mf.presentation.generator_degrees.size(); ++i) {
    std::string label = i < mf.presentation.generator_labels.size()
                            ? mf.presentation.generator_labels[i]
                            : "g" + std::to_string(i);
    j["generators"].push_back(
        {{"degree", mf.presentation.generator_degrees[i]}, {"label", label}});
  }
  j["relations"] = json::array();
  for (const auto& r : mf.presentation.relations) {
    json terms = json::array();
    for (const auto& t : r.terms) {
      std::string label =
          static_cast<size_t>(t.gen) < mf.presentation.generator_labels.size()
              ? mf.presentation.generator_labels[static_cast<size_t>(t.gen)]
              : "g" + std::to_string(t.gen);
      terms.push_back({{"gen", label},
                       {"injection", t.inj.image},
                       {"coeff", t.coeff}});
    }
    j["relations"].push_back({{"degree", r.degree}, {"terms", terms}});
  }
  return j;
}

// ---------------------------------------------------------------------------
// Report serialization.

inline json table_to_json(const HomologyTable& t) {
  json cells = json::array();
  for (int a = 0; a <= t.a_max; ++a)
    for (int n = 0; n <= t.n_max; ++n)
      cells.push_back({{"a", a}, {"n", n}, {"dim", t.at(a, n)}});
  return json{{"amax", t.a_max}, {"nmax", t.n_max}, {"cells", cells}};
}

inline json ext_to_json(const ExtDegree& e) {
  if (e.is_finite()) return json(e.finite());
  return json(e.str());
}

inline json cert_to_json(const Cert& c) {
  return json{{"value", ext_to_json(c.value)}, {"certified", c.certified}};
}

inline json report_to_json(const InvariantReport& r) {
  json j;
  j["field"] = r.field;
  j["window"] = r.window;
  j["k"] = ext_to_json(r.bounds.k);
  j["d"] = ext_to_json(r.bounds.d);
  j["deg"] = cert_to_json(r.deg);
  j["low"] = cert_to_json(r.low);
  j["td"] = cert_to_json(r.td);
  json hd = json::array();
  for (size_t a = 0; a < r.hd.size(); ++a)
    hd.push_back({{"a", a},
                  {"value", ext_to_json(r.hd[a].value)},
                  {"certified", r.hd[a].certified}});
  j["hd"] = hd;
  j["reg"] = cert_to_json(r.reg);
  if (r.n_of_v_available) {
    j["N"] = json{{"value", r.n_of_v.value}, {"certified", r.n_of_v.certified}};
  } else {
    j["N"] = json{{"value", nullptr}, {"certified", false}};
  }
  if (r.derivative_tower_available) {
    j["hd1_D"] = cert_to_json(r.hd1_D);
    j["td_D"] = cert_to_json(r.td_D);
  }
  if (r.shift_tower_available) j["hd1_S"] = cert_to_json(r.hd1_S);
  return j;
}

inline json check_to_json(const BoundCheckResult& c) {
  json j;
  j["theorem"] = c.theorem;
  j["verdict"] = verdict_name(c.verdict);
  j["lhs"] = ext_to_json(c.lhs);
  j["rhs"] = ext_to_json(c.rhs);
  j["inputs"] = c.inputs;
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.payload.empty()) j["payload"] = json::parse(c.payload);
  return j;
}

}  // namespace fihom

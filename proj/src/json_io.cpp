#include "fadinglab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fadinglab/error.hpp"

namespace fadinglab {
namespace {

using json = nlohmann::ordered_json;

double number(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  if (!it->is_number()) throw ParseError(where + ": field '" + key + "' must be a number");
  return it->get<double>();
}

const json& array_field(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  if (!it->is_array()) throw ParseError(where + ": field '" + key + "' must be an array");
  return *it;
}

void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ParseError(where + ": unexpected field '" + key + "'");
  }
}

json canonical(const json& j) {
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (std::isfinite(v) && v == std::trunc(v) && std::abs(v) < 1e15) return json(static_cast<std::int64_t>(v));
    return j;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& e : j) out.push_back(canonical(e));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = canonical(v);
    return out;
  }
  return j;
}

const std::map<ChannelKind, std::vector<std::string>>& link_parameters() {
  static const std::map<ChannelKind, std::vector<std::string>> names{
      {ChannelKind::rayleigh, {}},
      {ChannelKind::hoyt, {"q"}},
      {ChannelKind::nakagami_m, {"m"}},
      {ChannelKind::rician_shadowed, {"K", "m"}},
      {ChannelKind::eta_mu, {"format", "eta", "n"}},
      {ChannelKind::ostbc_shadowed_rician, {"n_t", "n_r", "a", "b", "m"}},
  };
  return names;
}

}  // namespace

json to_json(const PosynomialMGF& mgf) {
  json terms = json::array();
  for (const auto& t : mgf.terms()) {
    json factors = json::array();
    for (const auto& f : t.factors) factors.push_back({{"a_re", f.a.real()}, {"a_im", f.a.imag()}, {"b", f.b}});
    terms.push_back({{"c", t.c}, {"factors", std::move(factors)}});
  }
  return json{{"terms", std::move(terms)}};
}

PosynomialMGF mgf_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("coefficients: expected an object");
  std::vector<MonomialTerm> terms;
  for (const auto& t : array_field(j, "terms", "coefficients")) {
    if (!t.is_object()) throw ParseError("coefficients: each term must be an object");
    MonomialTerm term;
    term.c = number(t, "c", "term");
    for (const auto& f : array_field(t, "factors", "term")) {
      if (!f.is_object()) throw ParseError("term: each factor must be an object");
      const double im = f.contains("a_im") ? number(f, "a_im", "factor") : 0.0;
      term.factors.push_back(MonomialFactor{Complex{number(f, "a_re", "factor"), im}, number(f, "b", "factor")});
    }
    terms.push_back(std::move(term));
  }
  return PosynomialMGF(std::move(terms));
}

json to_json(const ChannelSpec& spec) {
  json j{{"kind", std::string(to_string(spec.kind))}};
  for (const auto& [k, v] : spec.params) j[k] = v;
  if (spec.avg_snr) j["avg_snr"] = *spec.avg_snr;
  switch (spec.kind) {
    case ChannelKind::mrc: {
      json branches = json::array();
      for (const auto& b : spec.components) branches.push_back(to_json(b));
      j["branches"] = std::move(branches);
      break;
    }
    case ChannelKind::mixture: {
      json scenarios = json::array();
      for (const auto& s : spec.components) scenarios.push_back(to_json(s));
      j["probs"] = spec.probs;
      j["scenarios"] = std::move(scenarios);
      break;
    }
    case ChannelKind::posynomial:
      if (spec.coefficients) j["terms"] = to_json(*spec.coefficients)["terms"];
      break;
    default:
      break;
  }
  return j;
}

ChannelSpec channel_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("channel: expected an object");
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) throw ParseError("channel: missing string field 'kind'");
  const std::string kind_name = kind_it->get<std::string>();
  const ChannelKind kind = channel_kind_from_string(kind_name);

  ChannelSpec spec;
  spec.kind = kind;
  switch (kind) {
    case ChannelKind::mrc: {
      only_keys(j, {"kind", "branches"}, kind_name);
      for (const auto& b : array_field(j, "branches", kind_name)) spec.components.push_back(channel_from_json(b));
      return spec;
    }
    case ChannelKind::mixture: {
      only_keys(j, {"kind", "probs", "scenarios"}, kind_name);
      for (const auto& p : array_field(j, "probs", kind_name)) {
        if (!p.is_number()) throw ParseError("mixture: probabilities must be numbers");
        spec.probs.push_back(p.get<double>());
      }
      for (const auto& s : array_field(j, "scenarios", kind_name)) spec.components.push_back(channel_from_json(s));
      return spec;
    }
    case ChannelKind::posynomial: {
      only_keys(j, {"kind", "terms"}, kind_name);
      spec.coefficients = mgf_from_json(json{{"terms", array_field(j, "terms", kind_name)}});
      return spec;
    }
    default:
      break;
  }

  const auto& names = link_parameters().at(kind);
  std::set<std::string> allowed{"kind"};
  for (const auto& n : names) {
    spec.params[n] = number(j, n, kind_name);
    allowed.insert(n);
  }
  if (kind == ChannelKind::ostbc_shadowed_rician) {
    only_keys(j, allowed, kind_name);
    return spec;
  }

  allowed.insert("avg_snr");
  allowed.insert("avg_snr_db");
  only_keys(j, allowed, kind_name);
  const bool linear = j.contains("avg_snr");
  const bool db = j.contains("avg_snr_db");
  if (linear == db) throw ParseError(kind_name + ": exactly one of avg_snr or avg_snr_db is required");
  spec.avg_snr = linear ? number(j, "avg_snr", kind_name) : std::pow(10.0, number(j, "avg_snr_db", kind_name) / 10.0);
  return spec;
}

WeightedGaussianSum weighted_sum_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("weights: expected an object");
  std::vector<GaussianTerm> terms;
  for (const auto& t : array_field(j, "terms", "weights")) {
    if (!t.is_object()) throw ParseError("weights: each term must be an object");
    terms.push_back(GaussianTerm{number(t, "w", "weights term"), number(t, "p", "weights term")});
  }
  try {
    return WeightedGaussianSum(std::move(terms));
  } catch (const DomainError& e) {
    throw ParseError(std::string("weights: ") + e.what());
  }
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str());
}

std::string dump_canonical(const json& j) { return canonical(j).dump(); }

}  // namespace fadinglab

#include "mfgf/serialization.hpp"

#include <cctype>
#include <cmath>
#include <vector>

#include "mfgf/errors.hpp"

namespace mfgf {

namespace {

Json endpoint_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? Json("inf") : Json("-inf");
  return Json(x);
}

double endpoint_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InvalidInput("interval endpoint must be a number, \"inf\" or \"-inf\"");
}

double parse_number(const std::string& raw) {
  std::string s;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  if (s == "-inf" || s == "-infinity") return -kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size() && !std::isnan(v)) return v;
  } catch (const std::logic_error&) {
  }
  throw InvalidInput("bad interval endpoint '" + raw + "'");
}

}  // namespace

Json to_json(const IntervalSet& set) {
  Json out = Json::array();
  for (const Interval& p : set.pieces()) {
    out.push_back(Json::array(
        {endpoint_to_json(p.lo), p.lo_open, endpoint_to_json(p.hi), p.hi_open}));
  }
  return out;
}

IntervalSet interval_set_from_json(const Json& j) {
  if (!j.is_array()) throw InvalidInput("interval set JSON must be an array");
  std::vector<Interval> pieces;
  for (const Json& q : j) {
    if (!q.is_array() || q.size() != 4 || !q[1].is_boolean() || !q[3].is_boolean()) {
      throw InvalidInput("interval pieces are [lo, lo_open, hi, hi_open]");
    }
    pieces.push_back(
        {endpoint_from_json(q[0]), q[1].get<bool>(), endpoint_from_json(q[2]), q[3].get<bool>()});
  }
  return IntervalSet::from_canonical(std::move(pieces));
}

Json to_json(const MEDistribution& med) {
  Json atoms = Json::array();
  for (const Atom& a : med.atoms()) atoms.push_back(Json::array({a.location, a.mass}));
  Json pieces = Json::array();
  for (const DensityPiece& p : med.pieces()) {
    pieces.push_back(Json::array({p.interval.lo, p.interval.hi, p.density}));
  }
  Json out;
  out["atoms"] = std::move(atoms);
  out["pieces"] = std::move(pieces);
  out["support"] = Json::array({med.support().kappa_min, med.support().kappa_max});
  return out;
}

MEDistribution med_from_json(const Json& j) {
  try {
    std::vector<Atom> atoms;
    for (const Json& a : j.at("atoms")) atoms.push_back({a.at(0).get<double>(), a.at(1).get<double>()});
    std::vector<DensityPiece> pieces;
    for (const Json& p : j.at("pieces")) {
      pieces.push_back({Interval::open(p.at(0).get<double>(), p.at(1).get<double>()),
                        p.at(2).get<double>()});
    }
    const Json& s = j.at("support");
    return MEDistribution(std::move(atoms), std::move(pieces),
                          {s.at(0).get<double>(), s.at(1).get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed distribution JSON: ") + e.what());
  }
}

IntervalSet parse_event(const std::string& text) {
  std::vector<Interval> pieces;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == 'U') {
      ++i;
      continue;
    }
    if (c != '[' && c != '(' && c != '{') {
      throw InvalidInput("event literal must start with '[', '(' or '{' near: " + text.substr(i));
    }
    const char closer = c == '{' ? '}' : 0;
    std::size_t j = i + 1;
    while (j < n && text[j] != ']' && text[j] != ')' && text[j] != '}') ++j;
    if (j == n) throw InvalidInput("unterminated interval literal: " + text.substr(i));
    if (closer && text[j] != '}') throw InvalidInput("point literal must close with '}'");
    if (!closer && text[j] == '}') throw InvalidInput("interval literal closed with '}'");
    const std::string body = text.substr(i + 1, j - i - 1);
    if (closer) {
      const double x = parse_number(body);
      if (!std::isfinite(x)) throw InvalidInput("point literal must be finite");
      pieces.push_back(Interval::point(x));
    } else {
      const auto comma = body.find(',');
      if (comma == std::string::npos) throw InvalidInput("interval literal needs 'lo,hi': " + body);
      const double lo = parse_number(body.substr(0, comma));
      const double hi = parse_number(body.substr(comma + 1));
      if (lo > hi) throw InvalidInput("interval literal has lo > hi: " + body);
      pieces.push_back({lo, c == '(', hi, text[j] == ')'});
    }
    i = j + 1;
  }
  return IntervalSet::unite(std::move(pieces));
}

}  // namespace mfgf

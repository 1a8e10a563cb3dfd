// SPDX-License-Identifier: Apache-2.0
#include "hcspec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hcspec/errors.hpp"

namespace hcs {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

json exact_or_double(const std::optional<Rational>& exact, double v) {
  if (exact) {
    const auto s = exact->to_string();
    if (s.find('/') == std::string::npos) return s;
  }
  return v;
}

double read_number(const json& j, const char* key, double fallback, std::optional<Rational>* exact = nullptr) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    if (auto r = Rational::parse(text)) {
      if (exact) *exact = r;
      return r->to_double();
    }
    throw InvalidProfile(std::string("field '") + key + "' is not a number: " + text);
  }
  throw InvalidProfile(std::string("field '") + key + "' must be a number or decimal string");
}

}  // namespace

json profile_to_json(const CoefficientProfile& profile) {
  json j;
  j["origin"] = exact_or_double(profile.exact_origin(), profile.origin());
  json segs = json::array();
  for (const auto& s : profile.segments()) {
    segs.push_back({{"length", exact_or_double(s.exact_length, s.length)},
                    {"q", s.q},
                    {"r", s.r},
                    {"m", s.m},
                    {"label", to_string(s.label)}});
  }
  j["segments"] = std::move(segs);
  return j;
}

CoefficientProfile profile_from_json(const json& j) {
  if (!j.is_object() || !j.contains("segments") || !j.at("segments").is_array())
    throw InvalidProfile("profile JSON needs a 'segments' array");
  std::optional<Rational> exact_origin;
  const double origin = read_number(j, "origin", 0.0, &exact_origin);
  if (!j.contains("origin")) exact_origin = Rational(0);
  std::vector<Segment> segs;
  for (const auto& e : j.at("segments")) {
    if (!e.is_object() || !e.contains("length")) throw InvalidProfile("segment needs a 'length'");
    Segment s;
    s.length = read_number(e, "length", 0.0, &s.exact_length);
    s.q = read_number(e, "q", 1.0);
    s.r = read_number(e, "r", 0.0);
    s.m = read_number(e, "m", 1.0);
    if (e.contains("label")) {
      if (!e.at("label").is_string()) throw InvalidProfile("segment label must be a string");
      s.label = material_from_string(e.at("label").get<std::string>());
    }
    segs.push_back(std::move(s));
  }
  return CoefficientProfile(std::move(segs), origin, exact_origin);
}

std::string to_csv(const CsvTable& table) {
  std::ostringstream os;
  for (const auto& c : table.comments) os << "# " << c << "\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  f << to_csv(table);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path.string());
  f << dump_json(j);
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot read " + path.string());
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw InvalidArgument("malformed JSON in " + path.string() + ": " + e.what());
  }
}

json report_to_json(const DefectReport& r) {
  json j{{"gap_index", r.gap_index},
         {"gap_lo", r.gap_lo},
         {"gap_hi", r.gap_hi},
         {"trapped_lambda", r.trapped_lambda},
         {"decay_rate", r.decay_rate},
         {"fit_quality", r.fit_quality},
         {"bc", to_string(r.bc)},
         {"n", r.n}};
  j["asymptotic_lambda"] = r.asymptotic_lambda ? json(*r.asymptotic_lambda) : json(nullptr);
  j["relative_offset"] = std::isnan(r.relative_offset) ? json(nullptr) : json(r.relative_offset);
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

}  // namespace hcs

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "twin_taylor/certify.hpp"

namespace twin_taylor {

namespace {

using Json = nlohmann::ordered_json;

std::string scientific(const Rational& q) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", to_double(q));
  return buf;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("report is missing '") + key + "'");
  return j.at(key).get<T>();
}

}  // namespace

std::string report_to_json(const CertificateReport& report) {
  Json j;
  j["claim_id"] = report.claim_id;
  j["verdict"] = std::string(to_string(report.verdict));
  j["hypotheses"] = Json::array();
  for (const auto& h : report.hypotheses) j["hypotheses"].push_back({{"name", h.name}, {"passed", h.passed}});
  j["enclosures"] = Json::object();
  for (const auto& e : report.enclosures) {
    j["enclosures"][e.name] = {{"lo", to_fraction_string(e.value.lo())}, {"hi", to_fraction_string(e.value.hi())}};
  }
  j["precision"] = report.precision;
  j["truncation"] = report.truncation;
  j["sub_claims"] = Json::array();
  for (const auto& s : report.sub_claims) {
    j["sub_claims"].push_back({{"name", s.name}, {"verdict", std::string(to_string(s.verdict))}});
  }
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

CertificateReport report_from_json(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    CertificateReport r;
    r.claim_id = field<std::string>(j, "claim_id");
    r.verdict = parse_verdict(field<std::string>(j, "verdict"));
    for (const auto& h : j.at("hypotheses")) r.hypotheses.push_back({field<std::string>(h, "name"), field<bool>(h, "passed")});
    for (const auto& [name, e] : j.at("enclosures").items()) {
      r.enclosures.push_back(
          {name, Enclosure(parse_rational(field<std::string>(e, "lo")), parse_rational(field<std::string>(e, "hi")))});
    }
    r.precision = field<int>(j, "precision");
    r.truncation = field<std::size_t>(j, "truncation");
    if (j.contains("sub_claims")) {
      for (const auto& s : j.at("sub_claims")) {
        r.sub_claims.push_back({field<std::string>(s, "name"), parse_verdict(field<std::string>(s, "verdict"))});
      }
    }
    if (j.contains("notes")) r.notes = j.at("notes").get<std::vector<std::string>>();
    return r;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_text(const CertificateReport& report) {
  std::ostringstream out;
  out << "claim:      " << report.claim_id << "\n";
  out << "verdict:    " << to_string(report.verdict) << "\n";
  out << "precision:  " << report.precision << " bits, truncation " << report.truncation << "\n";
  out << "hypotheses:\n";
  for (const auto& h : report.hypotheses) out << "  [" << (h.passed ? "pass" : "FAIL") << "] " << h.name << "\n";
  if (!report.sub_claims.empty()) {
    out << "sub-claims:\n";
    for (const auto& s : report.sub_claims) out << "  " << s.name << ": " << to_string(s.verdict) << "\n";
  }
  out << "enclosures:\n";
  for (const auto& e : report.enclosures) {
    out << "  " << e.name << " in [" << to_decimal_directed(e.value.lo(), 25, false) << ", "
        << to_decimal_directed(e.value.hi(), 25, true) << "]  width " << scientific(e.value.width()) << "\n";
  }
  if (!report.notes.empty()) {
    out << "notes:\n";
    for (const auto& n : report.notes) out << "  " << n << "\n";
  }
  return out.str();
}

}  // namespace twin_taylor

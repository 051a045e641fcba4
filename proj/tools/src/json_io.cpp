#include "bkmtools/json_io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "bkm/errors.hpp"

namespace bkm::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw BkmError(ErrorKind::InvalidInput, what); }

long to_long(const json& j, const char* what) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (is_integer(q)) return static_cast<long>(to_int64(q));
  }
  bad(std::string(what) + " must be an integer");
}

}  // namespace

json load_json_arg(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\r\n");
  bool looks_inline = first != std::string::npos && std::string("[{\"-0123456789").find(arg[first]) != std::string::npos;
  if (!looks_inline) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) {
      // bare words such as rho
      return json(arg);
    }
    std::ifstream in(arg);
    if (!in) bad("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected an integer or a \"p/q\" string, got " + j.dump());
}

json rational_to_json(const Rational& q) { return to_string(q); }

CartanMatrix matrix_from_json(const json& j) {
  const json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("A")) bad("matrix object needs key \"A\"");
    rows = &j.at("A");
  }
  if (!rows->is_array() || rows->empty()) bad("matrix must be a non-empty array of rows");
  Mat m;
  for (auto& row : *rows) {
    if (!row.is_array()) bad("matrix rows must be arrays");
    Vec r;
    for (auto& e : row) r.push_back(rational_from_json(e));
    m.push_back(std::move(r));
  }
  return CartanMatrix::validate(m);
}

json matrix_to_json(const CartanMatrix& a) {
  json rows = json::array();
  for (auto& row : a.entries()) {
    json r = json::array();
    for (auto& e : row) r.push_back(rational_to_json(e));
    rows.push_back(r);
  }
  return {{"A", rows}};
}

Weight weight_from_json(const json& j, const CartanMatrix& a) {
  if (j.is_string()) {
    if (j.get<std::string>() == "rho") return weyl_vector(a);
    bad("unknown weight \"" + j.get<std::string>() + "\"");
  }
  if (j.is_object() && j.contains("powers")) {
    std::vector<long> m;
    for (auto& e : j.at("powers")) m.push_back(to_long(e, "power"));
    if (m.size() != a.size()) bad("powers length differs from the rank");
    for (long x : m)
      if (x < 1) bad("powers must be positive");
    return weight_from_powers(a, m);
  }
  const json* p = &j;
  if (j.is_object()) {
    if (!j.contains("pairings")) bad("weight object needs \"pairings\" or \"powers\"");
    p = &j.at("pairings");
  }
  if (!p->is_array()) bad("weight must be an array of pairings");
  Vec v;
  for (auto& e : *p) v.push_back(rational_from_json(e));
  if (v.size() != a.size()) bad("weight length differs from the rank");
  return Weight(v);
}

json weight_to_json(const Weight& w) {
  json p = json::array();
  for (auto& x : w.p) p.push_back(rational_to_json(x));
  return {{"pairings", p}};
}

HoleSet holes_from_json(const json& j, std::size_t rank) {
  HoleSet hs;
  const json* arr = &j;
  if (j.is_object()) {
    if (j.contains("cap")) hs.cap = static_cast<int>(to_long(j.at("cap"), "cap"));
    if (!j.contains("holes")) bad("hole set needs key \"holes\"");
    arr = &j.at("holes");
  }
  if (!arr->is_array()) bad("holes must be an array");
  for (auto& h : *arr) {
    if (h.is_array()) {
      hs.holes.push_back(rootsum_from_json(h, rank));
      continue;
    }
    if (!h.is_object() || !h.contains("support") || !h.contains("powers")) bad("hole needs support and powers");
    RootSum r(rank);
    for (auto& s : h.at("support")) {
      long i = to_long(s, "support node");
      if (i < 0 || static_cast<std::size_t>(i) >= rank) bad("support node out of range");
      std::string key = std::to_string(i);
      if (!h.at("powers").contains(key)) bad("missing power for node " + key);
      long m = to_long(h.at("powers").at(key), "power");
      if (m < 1) bad("hole powers must be positive");
      r[static_cast<std::size_t>(i)] = static_cast<int>(m);
    }
    for (auto& [k, v] : h.at("powers").items()) {
      (void)v;
      long i = std::stol(k);
      if (i < 0 || static_cast<std::size_t>(i) >= rank || r[static_cast<std::size_t>(i)] == 0)
        bad("power given for node " + k + " outside the support");
    }
    if (r.is_zero()) bad("empty hole");
    hs.holes.push_back(r);
  }
  std::sort(hs.holes.begin(), hs.holes.end());
  hs.holes.erase(std::unique(hs.holes.begin(), hs.holes.end()), hs.holes.end());
  return hs;
}

json holes_to_json(const HoleSet& hs) {
  json arr = json::array();
  for (auto& h : hs.holes) {
    json support = json::array();
    json powers = json::object();
    for (auto i : h.support()) {
      support.push_back(i);
      powers[std::to_string(i)] = h[i];
    }
    arr.push_back({{"support", support}, {"powers", powers}});
  }
  return {{"holes", arr}, {"cap", hs.cap}};
}

RootSum rootsum_from_json(const json& j, std::size_t rank) {
  if (!j.is_array() || j.size() != rank) bad("grade must be an array of length " + std::to_string(rank));
  RootSum r(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    long v = to_long(j[i], "grade entry");
    if (v < 0) bad("grade entries must be non-negative");
    r[i] = static_cast<int>(v);
  }
  return r;
}

json rootsum_to_json(const RootSum& b) { return json(b.c); }

json rootsums_to_json(const std::vector<RootSum>& v) {
  json out = json::array();
  for (auto& b : v) out.push_back(rootsum_to_json(b));
  return out;
}

json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

json character_to_json(const FormalCharacter& ch) {
  json coeffs = json::array();
  for (auto& [b, c] : ch.sorted()) coeffs.push_back({{"grade", rootsum_to_json(b)}, {"c", integer_to_json(c)}});
  json top = ch.top().size() ? weight_to_json(ch.top()) : json::object();
  return {{"top", top}, {"coeffs", coeffs}, {"cutoff", ch.cutoff()}};
}

FormalCharacter character_from_json(const json& j, std::size_t rank) {
  Weight top;
  if (j.at("top").contains("pairings")) {
    Vec v;
    for (auto& e : j.at("top").at("pairings")) v.push_back(rational_from_json(e));
    top = Weight(v);
  }
  FormalCharacter ch(rank, static_cast<int>(to_long(j.at("cutoff"), "cutoff")), top);
  for (auto& e : j.at("coeffs")) {
    const json& c = e.at("c");
    Integer z = c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long>());
    ch.add(rootsum_from_json(e.at("grade"), rank), z);
  }
  return ch;
}

std::string character_table(const FormalCharacter& ch) {
  auto rows = ch.sorted();
  std::vector<std::string> left;
  std::size_t width = 5;
  for (auto& [b, c] : rows) {
    left.push_back(b.str());
    width = std::max(width, left.back().size());
  }
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(width)) << "grade" << "  coeff\n";
  for (std::size_t k = 0; k < rows.size(); ++k)
    os << std::left << std::setw(static_cast<int>(width)) << left[k] << "  " << rows[k].second.get_str() << "\n";
  return os.str();
}

json points_to_json(const std::vector<Point2>& pts) {
  json out = json::array();
  for (auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

json kk_to_json(const KkResult& r) {
  json w = json::array();
  for (auto& s : r.witness) w.push_back({{"beta", rootsum_to_json(s.beta)}, {"n", s.n}});
  return {{"linked", r.linked}, {"exhausted", r.exhausted}, {"witness", w}};
}

json provenance(const CartanMatrix& a, int cutoff) {
  return {{"matrix_hash", a.hash_hex()}, {"cutoff", cutoff}, {"version", "0.1.0"}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bkm::io

#include "nonlocal/transcript_io.hpp"

#include <fmt/format.h>

#include <charconv>
#include <json.hpp>
#include <vector>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view field) {
  T v{};
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw DomainError(fmt::format("transcript: malformed number '{}'", field));
  }
  return v;
}

double parse_double(std::string_view field) {
  // from_chars for double is missing on older libstdc++.
  std::string copy(field);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != copy.size() || copy.empty()) {
    throw DomainError(fmt::format("transcript: malformed number '{}'", field));
  }
  return v;
}

void check(const ProtocolTranscript& t) {
  if (t.alice_bits.size() != (std::size_t{1} << t.levels)) {
    throw DomainError("transcript: alice_bits length does not match level count");
  }
  Address(t.address, t.levels);
}

}  // namespace

std::string transcript_csv_header() {
  return "levels,c,c_prime,address,alice_bits,wire_bit,received_bit,decoded";
}

std::string to_csv_record(const ProtocolTranscript& t) {
  return fmt::format("{},{:.17g},{:.17g},{},{},{},{},{}", t.levels, t.c, t.c_prime, t.address,
                     t.alice_bits.to_string(), t.wire_bit, t.received_bit,
                     t.decoded ? std::to_string(*t.decoded) : std::string());
}

ProtocolTranscript parse_csv_record(std::string_view line) {
  const auto f = split(line, ',');
  if (f.size() != 8) throw DomainError("transcript: expected 8 fields");
  ProtocolTranscript t;
  t.levels = parse_number<unsigned>(f[0]);
  t.c = parse_double(f[1]);
  t.c_prime = parse_double(f[2]);
  t.address = parse_number<std::uint64_t>(f[3]);
  t.alice_bits = BitVector::from_string(f[4]);
  t.wire_bit = checked_bit(parse_number<int>(f[5]));
  t.received_bit = checked_bit(parse_number<int>(f[6]));
  if (!f[7].empty()) t.decoded = checked_bit(parse_number<int>(f[7]));
  check(t);
  return t;
}

std::string to_json(const ProtocolTranscript& t) {
  nlohmann::json j;
  j["levels"] = t.levels;
  j["c"] = t.c;
  j["c_prime"] = t.c_prime;
  j["address"] = t.address;
  j["alice_bits"] = t.alice_bits.to_string();
  j["wire_bit"] = t.wire_bit;
  j["received_bit"] = t.received_bit;
  j["decoded"] = t.decoded ? nlohmann::json(*t.decoded) : nlohmann::json(nullptr);
  return j.dump();
}

ProtocolTranscript transcript_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    ProtocolTranscript t;
    t.levels = j.at("levels").get<unsigned>();
    t.c = j.at("c").get<double>();
    t.c_prime = j.at("c_prime").get<double>();
    t.address = j.at("address").get<std::uint64_t>();
    t.alice_bits = BitVector::from_string(j.at("alice_bits").get<std::string>());
    t.wire_bit = checked_bit(j.at("wire_bit").get<int>());
    t.received_bit = checked_bit(j.at("received_bit").get<int>());
    if (!j.at("decoded").is_null()) t.decoded = checked_bit(j.at("decoded").get<int>());
    check(t);
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("transcript: ") + e.what());
  }
}

}  // namespace nonlocal

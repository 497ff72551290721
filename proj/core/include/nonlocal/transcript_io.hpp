#pragma once

#include <string>
#include <string_view>

#include "nonlocal/vandam.hpp"

namespace nonlocal {

/// Flat record: levels,c,c_prime,address,alice_bits,wire_bit,received_bit,decoded
/// alice_bits is a 0/1 string with x_0 first; decoded is empty when absent.
std::string transcript_csv_header();
std::string to_csv_record(const ProtocolTranscript& t);
ProtocolTranscript parse_csv_record(std::string_view line);

/// Same fields as a JSON object.
std::string to_json(const ProtocolTranscript& t);
ProtocolTranscript transcript_from_json(std::string_view text);

}  // namespace nonlocal

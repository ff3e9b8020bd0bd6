#pragma once

#include <string>

#include <json.hpp>

#include "fadinglab/analysis.hpp"
#include "fadinglab/channels.hpp"
#include "fadinglab/mgf.hpp"

namespace fadinglab {

// Canonical coefficient form:
//   {"terms":[{"c":1,"factors":[{"a_re":2,"a_im":0,"b":2}]}]}
nlohmann::ordered_json to_json(const PosynomialMGF& mgf);
PosynomialMGF mgf_from_json(const nlohmann::ordered_json& j);

// Channel form, e.g. {"kind":"nakagami_m","m":2.5,"avg_snr_db":10.0}, with
// nested "branches" (mrc) and "probs"/"scenarios" (mixture).
nlohmann::ordered_json to_json(const ChannelSpec& spec);
ChannelSpec channel_from_json(const nlohmann::ordered_json& j);

// {"terms":[{"w":0.5,"p":2.0}, ...]}
WeightedGaussianSum weighted_sum_from_json(const nlohmann::ordered_json& j);

/// Parses text, mapping every syntax error to ParseError.
nlohmann::ordered_json parse_json_text(const std::string& text);
nlohmann::ordered_json read_json_file(const std::string& path);

/// Compact dump in which integral doubles print without a fractional part.
std::string dump_canonical(const nlohmann::ordered_json& j);

}  // namespace fadinglab

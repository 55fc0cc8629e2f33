#pragma once

#include "wbe/twisted.hpp"
#include "wbe/twistless.hpp"

#include <string>
#include <vector>

namespace wbe {

inline constexpr const char* kSchemaId = "wbe/1";

/// Solution archives cross the serialization boundary as decimal strings
/// with an explicit precision tag; no binary floats.
std::string archive_twistless(const std::vector<SolutionRecord>& recs);
std::string archive_twisted(const std::vector<TwistedRecord>& recs);

std::vector<SolutionRecord> load_twistless(const std::string& json_text);
std::vector<TwistedRecord> load_twisted(const std::string& json_text);

/// Root-scatter CSV (node_a, node_s, re, im, tableau_id) for external
/// plotting.
std::string roots_csv(const std::vector<SolutionRecord>& recs);

/// Kind probe: "twistless", "twisted", or throws on schema mismatch.
std::string archive_kind(const std::string& json_text);

}  // namespace wbe

#pragma once

#include <string>

#include <json.hpp>

#include "berezin/inequalities.hpp"
#include "berezin/ranges.hpp"

namespace berezin {

using Json = nlohmann::ordered_json;

/// x rounded to 15 significant digits; the JSON writer then prints at most 15.
double round15(double x);

Json to_json(const InequalityReport& r);
Json to_json(const FalsifyReport& r);
Json to_json(const SectorReport& r);
Json to_json(const Classification& c);
Json to_json(const DphiBounds& b);
Json to_json(const VerifyParams& p);

/// Two-space indented document followed by a newline.
std::string dump(const Json& j);

}  // namespace berezin

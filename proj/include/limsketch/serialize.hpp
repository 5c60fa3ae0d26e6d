#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "limsketch/compare.hpp"
#include "limsketch/elim.hpp"
#include "limsketch/kelly.hpp"
#include "limsketch/setops.hpp"
#include "limsketch/sketch.hpp"
#include "limsketch/universal.hpp"

namespace limsketch {

using Json = nlohmann::ordered_json;

// Parse errors become InputError naming the source, line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

// {"objects", "arrows":[{"id","dom","cod"}], "identities":{obj:arrow},
//  "compose":[{"g","f","gf"}]}. Composites with an identity may be omitted.
Json category_to_json(const FinCategory& c);
CategoryPtr category_from_json(const Json& j, const std::string& where = "category");

// {"category": <builder name or inline>, "carrier":{obj:[elem]},
//  "action":{arrow:{elem:elem}}}; identity actions are not written.
Json presentation_to_json(const SetPresentation& x, const std::optional<std::string>& category_name = {});
// With `expected` set, the referenced category must equal it and the result
// shares that pointer.
SetPresentation presentation_from_json(const Json& j, CategoryPtr expected = nullptr,
                                       const std::string& where = "presentation");

// {"category":..., "cones":[{"name","peak","shape","diagram":{"objects","arrows"},"legs"}]}
Json sketch_to_json(const LimitSketch& s, const std::optional<std::string>& category_name = {});
LimitSketch sketch_from_json(const Json& j, const std::string& where = "sketch");

// {"components":{obj:{elem:elem}}}
Json nat_trans_to_json(const SetPresentation& source, const SetPresentation& target, const NatTrans& t);
NatTrans nat_trans_from_json(const Json& j, const SetPresentation& source,
                             const SetPresentation& target, const std::string& where = "map");

Json model_report_to_json(const ModelReport& r);
Json elim_trace_to_json(const ElimTrace& t);
Json kelly_trace_to_json(const KellyTrace& t);
Json alpha_to_json(const AlphaTrace& a, const ElimTrace& elim, const KellyTrace& kelly);

}  // namespace limsketch

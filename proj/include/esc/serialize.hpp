#pragma once

#include <cstdint>
#include <ostream>

#include "json.hpp"

#include "esc/oracle.hpp"
#include "esc/strategy.hpp"

namespace esc {

using Json = nlohmann::json;

Json to_json(const Redex& r);
/// {index, kind, cut_path, occ_path, size_after, measure_after, duplicated_value_size?}
Json to_json(const StepRecord& s);
Json to_json(const Report& r);
Json to_json(const SubTermReport& r);
Json to_json(const SnResult& r);

/// {initial_term, strategy, seed}
Json trace_header(const Trace& t);

/// Header line, then one line per step.
void write_trace_jsonl(std::ostream& out, const Trace& t);

/// Steps by kind, final size, maximum duplicated size, measure trajectory,
/// verdict and whether the result is cut-free.
Json trace_summary(const Trace& t);

} // namespace esc
